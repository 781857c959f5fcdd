use rug::{Float, Rational};

use crate::combinatorics::factorial;

/// A summand `f` with closed-form derivatives and definite integral.
pub trait SmoothFunction: Send + Sync {
    /// `f^(order)(t)`.
    fn derivative(&self, order: usize, t: &Float) -> Float;

    /// `int_a^b f(t) dt`.
    fn integral(&self, a: &Float, b: &Float) -> Float;

    fn value(&self, t: &Float) -> Float {
        self.derivative(0, t)
    }

    fn name(&self) -> String;
}

/// `f(t) = (scale * t + offset)^exponent` on the region where the base is positive.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Power {
    pub scale: Rational,
    pub offset: Rational,
    pub exponent: Rational,
}

impl Power {
    pub fn new(scale: Rational, offset: Rational, exponent: Rational) -> Self {
        Self { scale, offset, exponent }
    }

    /// `t^exponent`.
    pub fn monomial(exponent: Rational) -> Self {
        Self::new(Rational::from(1), Rational::new(), exponent)
    }

    pub fn inverse() -> Self {
        Self::monomial(Rational::from(-1))
    }

    pub fn inverse_square() -> Self {
        Self::monomial(Rational::from(-2))
    }

    pub fn sqrt() -> Self {
        Self::monomial(Rational::from((1, 2)))
    }

    pub fn square() -> Self {
        Self::monomial(Rational::from(2))
    }

    pub fn constant_one() -> Self {
        Self::monomial(Rational::new())
    }

    /// `1/(2t + 1)`.
    pub fn inverse_odd() -> Self {
        Self::new(Rational::from(2), Rational::from(1), Rational::from(-1))
    }

    fn base(&self, t: &Float) -> Float {
        let prec = t.prec();
        Float::with_val(prec, t * &self.scale) + &self.offset
    }

    fn power(base: &Float, exponent: &Rational) -> Float {
        let prec = base.prec();
        if *exponent.denom() == 1 {
            if let Some(e) = exponent.numer().to_i32() {
                return Float::with_val(prec, rug::ops::Pow::pow(base, e));
            }
        }
        let e = Float::with_val(prec, exponent);
        Float::with_val(prec, rug::ops::Pow::pow(base, &e))
    }
}

impl SmoothFunction for Power {
    fn derivative(&self, order: usize, t: &Float) -> Float {
        let prec = t.prec();
        let mut falling = Rational::from(1);
        for i in 0..order {
            falling *= Rational::from(&self.exponent - i as u64);
        }
        if falling == 0 {
            return Float::new(prec);
        }
        let chain = Rational::from(rug::ops::Pow::pow(&self.scale, order as u32));
        let coefficient = falling * chain;
        let reduced = Rational::from(&self.exponent - order as u64);
        Float::with_val(prec, &coefficient) * Self::power(&self.base(t), &reduced)
    }

    fn integral(&self, a: &Float, b: &Float) -> Float {
        let prec = a.prec().max(b.prec());
        let (lo, hi) = (self.base(a), self.base(b));
        if self.exponent == -1 {
            return Float::with_val(prec, (hi / lo).ln()) / &self.scale;
        }
        let raised = Rational::from(&self.exponent + 1u32);
        let diff = Self::power(&hi, &raised) - Self::power(&lo, &raised);
        Float::with_val(prec, diff / Rational::from(&raised * &self.scale))
    }

    fn name(&self) -> String {
        let inner = match (self.scale == 1, self.offset == 0) {
            (true, true) => "t".to_string(),
            (true, false) => format!("(t + {})", self.offset),
            (false, true) => format!("{}*t", self.scale),
            (false, false) => format!("({}*t + {})", self.scale, self.offset),
        };
        format!("{inner}^({})", self.exponent)
    }
}

/// `f(t) = log t`.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct Log;

impl SmoothFunction for Log {
    fn derivative(&self, order: usize, t: &Float) -> Float {
        let prec = t.prec();
        if order == 0 {
            return Float::with_val(prec, t.ln_ref());
        }
        // (-1)^(n-1) (n-1)! / t^n
        let magnitude = Float::with_val(prec, factorial(order - 1)) / Float::with_val(prec, rug::ops::Pow::pow(t, order as u32));
        if order % 2 == 0 {
            -magnitude
        } else {
            magnitude
        }
    }

    fn integral(&self, a: &Float, b: &Float) -> Float {
        let prec = a.prec().max(b.prec());
        let anti = |t: &Float| Float::with_val(prec, t * Float::with_val(prec, t.ln_ref())) - t;
        anti(b) - anti(a)
    }

    fn name(&self) -> String {
        "log(t)".into()
    }
}
