use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use rug::{Float, Rational};

/// Dense polynomial with exact rational coefficients, lowest degree first.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct RationalPolynomial {
    coefficients: Vec<Rational>,
}

impl RationalPolynomial {
    pub fn new(coefficients: Vec<Rational>) -> Self {
        let mut poly = Self { coefficients };
        poly.normalize();
        poly
    }

    pub fn zero() -> Self {
        Self::default()
    }

    pub fn constant(c: Rational) -> Self {
        Self::new(vec![c])
    }

    /// The monomial `c t^degree`.
    pub fn monomial(c: Rational, degree: usize) -> Self {
        let mut coefficients = vec![Rational::new(); degree + 1];
        coefficients[degree] = c;
        Self::new(coefficients)
    }

    /// `t + shift`.
    pub fn linear(shift: Rational) -> Self {
        Self::new(vec![shift, Rational::from(1)])
    }

    fn normalize(&mut self) {
        while self.coefficients.last().is_some_and(|c| *c == 0) {
            self.coefficients.pop();
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coefficients.is_empty()
    }

    /// Degree, `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coefficients.len().checked_sub(1)
    }

    pub fn coefficients(&self) -> &[Rational] {
        &self.coefficients
    }

    pub fn coefficient(&self, power: usize) -> Rational {
        self.coefficients.get(power).cloned().unwrap_or_default()
    }

    pub fn scale(&self, factor: &Rational) -> Self {
        Self::new(self.coefficients.iter().map(|c| Rational::from(c * factor)).collect())
    }

    /// Horner evaluation, exact.
    pub fn eval(&self, t: &Rational) -> Rational {
        let mut acc = Rational::new();
        for c in self.coefficients.iter().rev() {
            acc *= t;
            acc += c;
        }
        acc
    }

    pub fn eval_float(&self, t: &Float) -> Float {
        let mut acc = Float::new(t.prec());
        for c in self.coefficients.iter().rev() {
            acc *= t;
            acc += c;
        }
        acc
    }

    /// `p(t + shift)`.
    pub fn shift(&self, shift: &Rational) -> Self {
        let linear = Self::linear(shift.clone());
        let mut acc = Self::zero();
        for c in self.coefficients.iter().rev() {
            acc = &acc * &linear;
            acc = acc + Self::constant(c.clone());
        }
        acc
    }

    /// `p(factor * t)`.
    pub fn dilate(&self, factor: &Rational) -> Self {
        let mut power = Rational::from(1);
        let mut out = Vec::with_capacity(self.coefficients.len());
        for c in &self.coefficients {
            out.push(Rational::from(c * &power));
            power *= factor;
        }
        Self::new(out)
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.coefficients
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| Rational::from(c * i as u64))
                .collect(),
        )
    }
}

impl Add for RationalPolynomial {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        &self + &rhs
    }
}

impl Add for &RationalPolynomial {
    type Output = RationalPolynomial;
    fn add(self, rhs: Self) -> RationalPolynomial {
        let n = self.coefficients.len().max(rhs.coefficients.len());
        RationalPolynomial::new((0..n).map(|i| self.coefficient(i) + rhs.coefficient(i)).collect())
    }
}

impl Sub for RationalPolynomial {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        &self - &rhs
    }
}

impl Sub for &RationalPolynomial {
    type Output = RationalPolynomial;
    fn sub(self, rhs: Self) -> RationalPolynomial {
        let n = self.coefficients.len().max(rhs.coefficients.len());
        RationalPolynomial::new((0..n).map(|i| self.coefficient(i) - rhs.coefficient(i)).collect())
    }
}

impl Neg for RationalPolynomial {
    type Output = Self;
    fn neg(self) -> Self {
        Self::new(self.coefficients.into_iter().map(|c| -c).collect())
    }
}

impl Mul for &RationalPolynomial {
    type Output = RationalPolynomial;
    fn mul(self, rhs: Self) -> RationalPolynomial {
        if self.is_zero() || rhs.is_zero() {
            return RationalPolynomial::zero();
        }
        let mut out = vec![Rational::new(); self.coefficients.len() + rhs.coefficients.len() - 1];
        for (i, a) in self.coefficients.iter().enumerate() {
            for (j, b) in rhs.coefficients.iter().enumerate() {
                out[i + j] += Rational::from(a * b);
            }
        }
        RationalPolynomial::new(out)
    }
}

impl Mul for RationalPolynomial {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        &self * &rhs
    }
}

impl fmt::Display for RationalPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (power, c) in self.coefficients.iter().enumerate().rev() {
            if *c == 0 {
                continue;
            }
            let negative = *c < 0;
            let magnitude = Rational::from(c.abs_ref());
            if first {
                if negative {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if negative { '-' } else { '+' })?;
            }
            first = false;
            let unit = magnitude == 1;
            match (power, unit) {
                (0, _) => write!(f, "{magnitude}")?,
                (1, true) => write!(f, "t")?,
                (1, false) => write!(f, "{magnitude}*t")?,
                (_, true) => write!(f, "t^{power}")?,
                (_, false) => write!(f, "{magnitude}*t^{power}")?,
            }
        }
        Ok(())
    }
}
