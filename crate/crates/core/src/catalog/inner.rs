//! Exact inner sums of the factorial-series displays.

use rug::{Float, Rational};

use crate::combinatorics::{
    bernoulli_polynomial, euler_polynomial, PolynomialKind, RationalPolynomial, StirlingTable,
};
use crate::error::{Error, Result};
use crate::real::ComplexRational;

use super::displays::{self, ceil_m_plus_one, Inner};
use super::FormulaId;

pub use super::displays::nested_log_weight;

/// `S_{l+1}(2)`, the Stirling factor of the log-free logarithmic inner sums.
pub fn log_stirling_factor(l: usize) -> Rational {
    displays::stirling_second_column(l)
}

fn polynomial(kind: PolynomialKind, n: usize) -> RationalPolynomial {
    match kind {
        PolynomialKind::Bernoulli => bernoulli_polynomial(n),
        PolynomialKind::Euler => euler_polynomial(n),
    }
}

/// `sum_l (-1)^l S_k(l) weight(l) P_{l+shift}(t)` as a polynomial in `t`.
fn inner_polynomial(inner: &Inner, k: usize) -> Result<RationalPolynomial> {
    let table = StirlingTable::shared(k);
    let row = table.row(k)?;
    let mut acc = RationalPolynomial::zero();
    for l in inner.start..=k {
        if row[l] == 0 {
            continue;
        }
        let w = (inner.weight)(l);
        if w.im != 0 {
            return Err(Error::Capability("complex weights have no rational numerator polynomial".into()));
        }
        let mut c = Rational::from(&row[l] * &w.re);
        if l % 2 == 1 {
            c = -c;
        }
        acc = acc + polynomial(inner.kind, l + inner.index_shift).scale(&c);
    }
    Ok(acc)
}

/// The exact polynomial in `t = {x}` that multiplies the order-`k`
/// denominator of `formula`, sign included.
///
/// Integer-limit variants yield a constant (the polynomial at `t = 0`).
/// Families depending on `m` need [`numerator_polynomial_with_m`].
pub fn numerator_polynomial(formula: FormulaId, k: usize) -> Result<RationalPolynomial> {
    numerator_polynomial_with_m(formula, k, None)
}

pub fn numerator_polynomial_with_m(formula: FormulaId, k: usize, m: Option<&ComplexRational>) -> Result<RationalPolynomial> {
    let shape = displays::shape(formula, m)?;
    let [inner] = shape.inners.as_slice() else {
        return Err(Error::Capability(format!("{formula} has a two-part numerator; use log_family_inner_sum")));
    };
    if inner.geometric.is_some() {
        return Err(Error::Capability(format!("{formula} has numerators involving log a")));
    }
    let mut poly = inner_polynomial(inner, k)?;
    if (k % 2 == 1) != (shape.sign < 0) {
        poly = -poly;
    }
    if shape.integer_limit {
        poly = RationalPolynomial::constant(poly.eval(&Rational::new()));
    }
    Ok(poly)
}

/// `sum_{l=1}^{k} C(m+1, l+s) S_k(l) B_{l+s}(t)`, the power-sum inner sum
/// with index shift `s`.
pub fn faulhaber_inner_sum(m: &ComplexRational, k: usize, l_shift: usize, t: &Rational) -> Result<ComplexRational> {
    if l_shift > 1 {
        if !m.is_real() {
            return Err(Error::Capability("index shifts above 1 need a real m".into()));
        }
        if l_shift as i64 != ceil_m_plus_one(m) - 1 {
            return Err(Error::Parameter(format!("index shift must be 0, 1 or ceil(m+1)-1, got {l_shift}")));
        }
    }
    let table = StirlingTable::shared(k);
    let row = table.row(k)?;
    let base = m.clone() + ComplexRational::real(Rational::from(1));
    let binomials = crate::combinatorics::binomial_sequence_complex(&base, k + l_shift + 1);
    let mut re = Rational::new();
    let mut im = Rational::new();
    for l in 1..=k {
        let b = bernoulli_polynomial(l + l_shift).eval(t);
        let factor = Rational::from(&row[l] * &b);
        let c = &binomials[l + l_shift];
        re += Rational::from(&c.re * &factor);
        im += Rational::from(&c.im * &factor);
    }
    Ok(ComplexRational::new(re, im))
}

/// The two inner sums of a logarithmic display at order `k`.
#[derive(Debug, Clone, PartialEq)]
pub struct LogInnerSums {
    /// The inner sum of the log-free series.
    pub log_free: Rational,
    /// The inner sum of the series multiplied by `log x`.
    pub log_part: Rational,
    /// `log_free + log_x * log_part`.
    pub combined: Float,
}

/// Inner sums of `logk_over_k`, `logk_over_k2` or `log_squared` at order
/// `k` and point `t`.
pub fn log_family_inner_sum(formula: FormulaId, k: usize, t: &Rational, log_x: &Float) -> Result<LogInnerSums> {
    let shape = displays::shape(formula, None)?;
    let [free, with_log] = shape.inners.as_slice() else {
        return Err(Error::Capability(format!("{formula} is not a two-part logarithmic display")));
    };
    let log_free = inner_polynomial(free, k)?.eval(t);
    let log_part = inner_polynomial(with_log, k)?.eval(t);
    let prec = log_x.prec();
    let combined = Float::with_val(prec, &log_free) + Float::with_val(prec, log_x * &log_part);
    Ok(LogInnerSums { log_free, log_part, combined })
}
