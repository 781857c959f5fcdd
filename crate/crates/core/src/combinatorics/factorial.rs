use rug::{Float, Integer, Rational};

use crate::error::{Error, Result};
use crate::real::{ComplexRational, ComplexReal};

/// Rising factorial `(x)_k = x(x+1)...(x+k-1)`, `(x)_0 = 1`.
pub fn pochhammer(x: &Float, k: usize) -> Float {
    let mut rising = RisingFactorial::new(x.clone());
    for _ in 0..k {
        rising.advance();
    }
    rising.value
}

/// Exact rising factorial at a rational point.
pub fn pochhammer_rational(x: &Rational, k: usize) -> Rational {
    let mut acc = Rational::from(1);
    let mut factor = x.clone();
    for _ in 0..k {
        acc *= &factor;
        factor += 1u32;
    }
    acc
}

/// Incremental `(x)_k`: each [`advance`](Self::advance) multiplies in one factor.
#[derive(Debug, Clone)]
pub struct RisingFactorial {
    base: Float,
    k: usize,
    value: Float,
}

impl RisingFactorial {
    pub fn new(base: Float) -> Self {
        let value = Float::with_val(base.prec(), 1);
        Self { base, k: 0, value }
    }

    /// Current order `k`.
    pub fn order(&self) -> usize {
        self.k
    }

    pub fn value(&self) -> &Float {
        &self.value
    }

    /// `(x)_k -> (x)_{k+1}`.
    pub fn advance(&mut self) -> &Float {
        let factor = Float::with_val(self.base.prec(), &self.base + self.k as u64);
        self.value *= factor;
        self.k += 1;
        &self.value
    }
}

/// `n!!` for odd `n`, continued to negative `n` by `n!! = (n+2)!!/(n+2)`.
pub fn double_factorial_odd(n: i64) -> Result<Rational> {
    if n % 2 == 0 {
        return Err(Error::Domain(format!("double factorial needs an odd argument, got {n}")));
    }
    if n >= -1 {
        let mut acc = Integer::from(1);
        let mut j = n;
        while j > 1 {
            acc *= j as u64;
            j -= 2;
        }
        return Ok(Rational::from(acc));
    }
    let mut acc = Rational::from(1);
    let mut j = -1;
    while j > n {
        // (j-2)!! = j!! / j
        acc /= Integer::from(j);
        j -= 2;
    }
    Ok(acc)
}

/// `C(m, l) = m(m-1)...(m-l+1)/l!`, exact.
pub fn generalized_binomial(m: &Rational, l: usize) -> Rational {
    let mut acc = Rational::from(1);
    for i in 0..l {
        acc *= Rational::from(m - i as u64);
        acc /= (i + 1) as u64;
    }
    acc
}

/// `C(m, 0), ..., C(m, len-1)` by the falling-product recurrence.
pub fn binomial_sequence(m: &Rational, len: usize) -> Vec<Rational> {
    let mut out = Vec::with_capacity(len);
    let mut acc = Rational::from(1);
    for i in 0..len {
        out.push(acc.clone());
        acc *= Rational::from(m - i as u64);
        acc /= (i + 1) as u64;
    }
    out
}

/// Complex-rational `C(m, 0..len)`.
pub fn binomial_sequence_complex(m: &ComplexRational, len: usize) -> Vec<ComplexRational> {
    let mut out = Vec::with_capacity(len);
    let mut acc = ComplexRational::real(Rational::from(1));
    for i in 0..len {
        out.push(acc.clone());
        let factor = m.clone() - ComplexRational::real(Rational::from(i as u64));
        acc = acc * factor;
        let scale = Rational::from((1, i as u64 + 1));
        acc = ComplexRational::new(Rational::from(&acc.re * &scale), Rational::from(&acc.im * &scale));
    }
    out
}

pub fn generalized_binomial_complex(m: &ComplexRational, l: usize) -> ComplexRational {
    binomial_sequence_complex(m, l + 1).pop().expect("non-empty")
}

/// Floating `C(m, l)` for real `m`.
pub fn generalized_binomial_float(m: &Float, l: usize) -> Float {
    let mut acc = Float::with_val(m.prec(), 1);
    for i in 0..l {
        acc *= Float::with_val(m.prec(), m - i as u64);
        acc /= (i + 1) as u64;
    }
    acc
}

/// Floating `C(m, l)` for complex `m`.
pub fn generalized_binomial_complex_real(m: &ComplexReal, l: usize) -> ComplexReal {
    let prec = m.prec();
    let mut acc = ComplexReal::from_real(Float::with_val(prec, 1));
    for i in 0..l {
        let factor = ComplexReal::new(Float::with_val(prec, &m.re - i as u64), m.im.clone());
        acc = acc * factor;
        acc = acc.scale(&Float::with_val(prec, Float::with_val(prec, 1) / (i as u64 + 1)));
    }
    acc
}

/// `n!` as an integer.
pub fn factorial(n: usize) -> Integer {
    Integer::from(Integer::factorial(n as u32))
}
