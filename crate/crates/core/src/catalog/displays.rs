//! Structural description of every factorial-series display.
//!
//! For each display the engine needs coefficients `a_l` such that the inner
//! sum at order `k` is `N_k = sum_l (-1)^l S_k(l) a_l`. Here
//! `a_l = weight(l) * P_{l + index_shift}(t)` with `P` a Bernoulli or Euler
//! polynomial; geometric displays carry an additional `(y log a)^l` factor
//! handled in floating point.

use std::sync::{Arc, Mutex};

use rug::{Integer, Rational};

use crate::combinatorics::{double_factorial_odd, factorial, PolynomialKind};
use crate::engine::DenominatorShift;
use crate::error::{Error, Result};
use crate::real::ComplexRational;

use super::{Family, FormulaId};

pub(crate) type Weight = Arc<dyn Fn(usize) -> ComplexRational + Send + Sync>;

#[derive(Clone)]
pub(crate) struct Inner {
    pub kind: PolynomialKind,
    pub index_shift: usize,
    pub start: usize,
    pub weight: Weight,
    /// `Some(j)`: the coefficient is additionally multiplied by
    /// `y^l (log a)^(l + j)`.
    pub geometric: Option<i32>,
}

pub(crate) struct Shape {
    pub formula: FormulaId,
    pub sign: i32,
    pub shift: DenominatorShift,
    /// Evaluate at `n = floor(x)` with `t = 0`.
    pub integer_limit: bool,
    pub inners: Vec<Inner>,
}

fn q(n: i64, d: i64) -> Rational {
    Rational::from((n, d))
}

fn alt(l: usize) -> i64 {
    if l % 2 == 0 {
        1
    } else {
        -1
    }
}

fn df(n: i64) -> Rational {
    double_factorial_odd(n).expect("odd argument")
}

fn fact(n: usize) -> Rational {
    Rational::from(factorial(n))
}

fn pow2(e: i64) -> Rational {
    if e >= 0 {
        Rational::from(Integer::from(1) << e as u32)
    } else {
        Rational::from((Integer::from(1), Integer::from(1) << (-e) as u32))
    }
}

/// `S_{l+1}(2)`, the signed Stirling number of the first kind.
pub(crate) fn stirling_second_column(l: usize) -> Rational {
    // S_{n}(2) = (-1)^n (n-1)! H_{n-1}
    let n = l + 1;
    let mut harmonic = Rational::new();
    for j in 1..n {
        harmonic += Rational::from((1, j as u64));
    }
    let value = Rational::from(factorial(n - 1)) * harmonic;
    if n % 2 == 0 {
        value
    } else {
        -value
    }
}

/// `sum_{j=0}^{l-1} (j+1)/(l-j)`.
pub fn nested_log_weight(l: usize) -> Rational {
    let mut acc = Rational::new();
    for j in 0..l {
        acc += Rational::from(((j + 1) as u64, (l - j) as u64));
    }
    acc
}

fn real(f: impl Fn(usize) -> Rational + Send + Sync + 'static) -> Weight {
    Arc::new(move |l| ComplexRational::real(f(l)))
}

/// Weight for a display written with `B_{l+shift}(1 - t)`, rewritten in
/// terms of `B_{l+shift}(t)`.
fn reflected(shift: usize, f: impl Fn(usize) -> Rational + Send + Sync + 'static) -> Weight {
    real(move |l| {
        let w = f(l);
        if (l + shift) % 2 == 1 {
            -w
        } else {
            w
        }
    })
}

fn bernoulli(index_shift: usize, weight: Weight) -> Inner {
    Inner { kind: PolynomialKind::Bernoulli, index_shift, start: 1, weight, geometric: None }
}

fn euler(index_shift: usize, weight: Weight) -> Inner {
    Inner { kind: PolynomialKind::Euler, index_shift, start: 0, weight, geometric: None }
}

/// Lazily grown `C(base, 0), C(base, 1), ...`.
struct BinomialMemo {
    base: ComplexRational,
    values: Mutex<Vec<ComplexRational>>,
}

impl BinomialMemo {
    fn new(base: ComplexRational) -> Arc<Self> {
        Arc::new(Self { base, values: Mutex::new(vec![ComplexRational::real(Rational::from(1))]) })
    }

    fn get(&self, j: usize) -> ComplexRational {
        let mut values = self.values.lock().expect("binomial memo poisoned");
        while values.len() <= j {
            let i = values.len() - 1;
            let factor = self.base.clone() - ComplexRational::real(Rational::from(i as u64));
            let next = values[i].clone() * factor;
            let scale = Rational::from((1, i as u64 + 1));
            values.push(ComplexRational::new(Rational::from(&next.re * &scale), Rational::from(&next.im * &scale)));
        }
        values[j].clone()
    }
}

fn scale(c: ComplexRational, s: &Rational) -> ComplexRational {
    ComplexRational::new(Rational::from(&c.re * s), Rational::from(&c.im * s))
}

/// `ceil(m + 1)` for real `m`.
pub(crate) fn ceil_m_plus_one(m: &ComplexRational) -> i64 {
    let c = Rational::from(&m.re + 1u32).ceil();
    c.numer().to_i64().expect("moderate exponent")
}

fn require_m(formula: FormulaId, m: Option<&ComplexRational>) -> Result<ComplexRational> {
    m.cloned().ok_or_else(|| Error::Capability(format!("{formula} depends on m")))
}

/// Structure of the factorial-series part of `formula`.
pub(crate) fn shape(formula: FormulaId, m: Option<&ComplexRational>) -> Result<Shape> {
    use DenominatorShift::{XPlusOne, X};
    let v = formula.variant;
    let (sign, shift, integer_limit, inners): (i32, DenominatorShift, bool, Vec<Inner>) = match formula.family {
        Family::Harmonic => match v {
            1 => (-1, X, false, vec![bernoulli(1, real(|l| q(1, l as i64 + 1)))]),
            _ => (-1, XPlusOne, false, vec![bernoulli(0, real(|l| q(1, l as i64)))]),
        },
        Family::Zeta2 => match v {
            1 => (-1, X, false, vec![bernoulli(1, real(|_| q(1, 1)))]),
            _ => (-1, X, false, vec![bernoulli(0, real(|_| q(1, 1)))]),
        },
        Family::Zeta3 => match v {
            1 => (-1, X, false, vec![bernoulli(1, real(|l| q(l as i64 + 2, 1)))]),
            _ => (-1, XPlusOne, false, vec![bernoulli(0, real(|l| q(l as i64 + 1, 1)))]),
        },
        Family::Sqrt => {
            let l = |l: usize| l as i64;
            match v {
                1 => (1, XPlusOne, false, vec![bernoulli(1, real(move |j| df(2 * l(j) - 3) / pow2(l(j)) / fact(j + 1)))]),
                2 => (1, XPlusOne, false, vec![bernoulli(2, real(move |j| df(2 * l(j) - 1) / pow2(l(j) + 1) / fact(j + 2)))]),
                _ => (1, XPlusOne, false, vec![bernoulli(0, real(move |j| df(2 * l(j) - 5) / pow2(l(j) - 1) / fact(j)))]),
            }
        }
        Family::KSqrt => {
            let l = |l: usize| l as i64;
            match v {
                1 => (-1, XPlusOne, false, vec![bernoulli(1, real(move |j| df(2 * l(j) - 5) / pow2(l(j) - 1) / fact(j + 1)))]),
                2 => (-1, XPlusOne, false, vec![bernoulli(3, real(move |j| df(2 * l(j) - 1) / pow2(l(j) + 1) / fact(j + 3)))]),
                _ => (-1, XPlusOne, false, vec![bernoulli(0, real(move |j| df(2 * l(j) - 7) / pow2(l(j) - 2) / fact(j)))]),
            }
        }
        Family::K2Sqrt => {
            let l = |l: usize| l as i64;
            match v {
                1 => (1, XPlusOne, false, vec![bernoulli(1, real(move |j| df(2 * l(j) - 7) / pow2(l(j) - 2) / fact(j + 1)))]),
                2 => (1, XPlusOne, false, vec![bernoulli(4, real(move |j| df(2 * l(j) - 1) / pow2(l(j) + 1) / fact(j + 4)))]),
                _ => (1, XPlusOne, false, vec![bernoulli(0, real(move |j| df(2 * l(j) - 9) / pow2(l(j) - 3) / fact(j)))]),
            }
        }
        Family::InvSqrt => {
            let l = |l: usize| l as i64;
            match v {
                1 => (-1, XPlusOne, false, vec![bernoulli(1, real(move |j| df(2 * l(j) - 1) / pow2(l(j)) / fact(j + 1)))]),
                _ => (-1, XPlusOne, false, vec![bernoulli(0, real(move |j| df(2 * l(j) - 3) / pow2(l(j) - 1) / fact(j)))]),
            }
        }
        Family::Zeta32 => {
            let l = |l: usize| l as i64;
            match v {
                1 => (-1, X, false, vec![bernoulli(1, real(move |j| df(2 * l(j) + 1) / pow2(l(j) + 1) / fact(j + 1)))]),
                _ => (-1, XPlusOne, false, vec![bernoulli(0, real(move |j| df(2 * l(j) - 1) / pow2(l(j)) / fact(j)))]),
            }
        }
        Family::Zeta52 => {
            let l = |l: usize| l as i64;
            match v {
                1 => (-1, X, false, vec![bernoulli(1, real(move |j| df(2 * l(j) + 3) / pow2(l(j) + 2) / fact(j + 1)))]),
                _ => (-1, X, false, vec![bernoulli(0, real(move |j| df(2 * l(j) + 1) / pow2(l(j) + 1) / fact(j)))]),
            }
        }
        Family::FaulhaberExt | Family::FaulhaberInt => {
            let m = require_m(formula, m)?;
            let integer_limit = formula.family == Family::FaulhaberInt;
            let memo = BinomialMemo::new(m.clone() + ComplexRational::real(Rational::from(1)));
            match v {
                1 => {
                    let w: Weight = Arc::new(move |l| scale(memo.get(l), &q(alt(l), 1)));
                    (1, XPlusOne, integer_limit, vec![bernoulli(0, w)])
                }
                2 => {
                    let w: Weight = Arc::new(move |l| scale(memo.get(l + 1), &q(alt(l), 1)));
                    (-1, XPlusOne, integer_limit, vec![bernoulli(1, w)])
                }
                _ => {
                    if !m.is_real() {
                        return Err(Error::Capability(format!("{formula} needs a real m")));
                    }
                    let offset = (ceil_m_plus_one(&m) - 1).max(0) as usize;
                    let w: Weight = Arc::new(move |l| scale(memo.get(l + offset), &q(alt(l), 1)));
                    (-1, XPlusOne, integer_limit, vec![bernoulli(offset, w)])
                }
            }
        }
        Family::LogFactorial => match v {
            1 => (1, XPlusOne, false, vec![bernoulli(1, real(|l| q(1, (l * (l + 1)) as i64)))]),
            2 => (1, X, false, vec![bernoulli(2, real(|l| q(1, ((l + 1) * (l + 2)) as i64)))]),
            _ => (
                1,
                XPlusOne,
                false,
                vec![bernoulli(0, real(|l| if l < 2 { Rational::new() } else { q(1, (l * (l - 1)) as i64) }))],
            ),
        },
        Family::KLogK => match v {
            1 => (-1, XPlusOne, false, vec![bernoulli(2, real(|l| q(1, (l * (l + 1) * (l + 2)) as i64)))]),
            _ => (-1, X, false, vec![bernoulli(3, real(|l| q(1, ((l + 1) * (l + 2) * (l + 3)) as i64)))]),
        },
        Family::LogkOverK => (
            1,
            X,
            false,
            vec![
                bernoulli(1, reflected(1, |l| stirling_second_column(l) / fact(l + 1))),
                bernoulli(1, reflected(1, |l| q(alt(l), l as i64 + 1))),
            ],
        ),
        Family::LogkOverK2 => (
            1,
            X,
            false,
            vec![
                bernoulli(1, reflected(1, |l| nested_log_weight(l) * q(alt(l), l as i64 + 1))),
                bernoulli(1, reflected(1, |l| q(alt(l), 1))),
            ],
        ),
        Family::LogSquared => (
            1,
            X,
            false,
            vec![
                bernoulli(2, reflected(2, |l| stirling_second_column(l) / fact(l + 2))),
                bernoulli(2, reflected(2, |l| q(alt(l), ((l + 1) * (l + 2)) as i64))),
            ],
        ),
        Family::GregoryLeibniz => match v {
            1 => (1, X, false, vec![euler(0, real(|l| pow2(l as i64)))]),
            _ => (
                1,
                X,
                true,
                vec![Inner {
                    kind: PolynomialKind::Bernoulli,
                    index_shift: 1,
                    start: 0,
                    weight: real(|l| pow2(l as i64) * (pow2(l as i64 + 1) - 1u32) / (l as u64 + 1)),
                    geometric: None,
                }],
            ),
        },
        Family::AltHarmonic => match v {
            1 => (-1, X, false, vec![euler(0, real(|_| q(1, 1)))]),
            _ => (
                1,
                X,
                true,
                vec![Inner {
                    kind: PolynomialKind::Bernoulli,
                    index_shift: 1,
                    start: 0,
                    weight: real(|l| (pow2(l as i64 + 1) - 1u32) / (l as u64 + 1)),
                    geometric: None,
                }],
            ),
        },
        Family::AltFaulhaberGen => {
            let m = require_m(formula, m)?;
            let memo = BinomialMemo::new(m + ComplexRational::real(Rational::from(1)));
            match v {
                1 => {
                    let w: Weight = Arc::new(move |l| scale(memo.get(l + 1), &q(alt(l) * (l as i64 + 1), 1)));
                    (-1, XPlusOne, false, vec![euler(0, w)])
                }
                _ => {
                    let w: Weight = Arc::new(move |l| scale(memo.get(l + 1), &(q(alt(l), 1) * (pow2(l as i64 + 1) - 1u32))));
                    let inner = Inner { kind: PolynomialKind::Bernoulli, index_shift: 1, start: 0, weight: w, geometric: None };
                    (1, XPlusOne, true, vec![inner])
                }
            }
        }
        Family::GeometricStirling => {
            let inner = Inner {
                kind: PolynomialKind::Bernoulli,
                index_shift: 0,
                start: 1,
                weight: real(|l| q(alt(l), 1) / fact(l)),
                geometric: Some(-1),
            };
            (1, XPlusOne, v == 2, vec![inner])
        }
        Family::AltGeometricStirling => match v {
            1 => {
                let inner = Inner {
                    kind: PolynomialKind::Euler,
                    index_shift: 0,
                    start: 0,
                    weight: real(|l| q(alt(l), 1) / fact(l)),
                    geometric: Some(0),
                };
                (1, XPlusOne, false, vec![inner])
            }
            _ => {
                let inner = Inner {
                    kind: PolynomialKind::Bernoulli,
                    index_shift: 1,
                    start: 0,
                    weight: real(|l| q(alt(l), 1) * (pow2(l as i64 + 1) - 1u32) / fact(l + 1)),
                    geometric: Some(0),
                };
                (1, XPlusOne, true, vec![inner])
            }
        },
        _ => return Err(Error::Capability(format!("{formula} is not a factorial-series display"))),
    };
    Ok(Shape { formula, sign, shift, integer_limit, inners })
}
