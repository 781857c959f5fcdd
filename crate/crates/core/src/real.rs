//! Arbitrary-precision scalars.
//!
//! [`BigReal`] is an MPFR float carrying its own precision and [`ExactRational`]
//! a canonical GMP rational. The helpers here cover the conversions the rest of
//! the crate needs: exact decimal parsing, decimal emission at a guaranteed
//! digit count, and a small complex pair type for the complex-exponent
//! Faulhaber variants.

use std::ops::{Add, Mul, Neg, Sub};

use rug::float::Round;
use rug::ops::Pow;
use rug::{Float, Integer, Rational};

use crate::error::{Error, Result};

pub type BigReal = Float;
pub type ExactRational = Rational;

/// Smallest working precision accepted anywhere in the crate.
pub const MIN_PREC: u32 = 64;

pub fn real(prec: u32, value: impl Into<f64>) -> Float {
    Float::with_val(prec, value.into())
}

pub fn from_rational(prec: u32, q: &Rational) -> Float {
    Float::with_val(prec, q)
}

pub fn from_integer(prec: u32, n: &Integer) -> Float {
    Float::with_val(prec, n)
}

/// Exact value of a finite float as a rational.
pub fn to_rational(x: &Float) -> Rational {
    x.to_rational().unwrap_or_default()
}

/// Parses `-12.5`, `3e-4`, `1.25E+2`, `7/3` or a plain integer exactly.
pub fn parse_rational(text: &str) -> Result<Rational> {
    let s = text.trim();
    if s.is_empty() {
        return Err(Error::Parse(text.to_string()));
    }
    if s.contains('/') {
        return Rational::from_str_radix(s, 10).map_err(|_| Error::Parse(text.to_string()));
    }
    let (mantissa, exponent) = match s.find(['e', 'E']) {
        Some(pos) => {
            let exp: i64 = s[pos + 1..]
                .parse()
                .map_err(|_| Error::Parse(text.to_string()))?;
            (&s[..pos], exp)
        }
        None => (s, 0),
    };
    let (negative, digits) = match mantissa.as_bytes().first() {
        Some(b'-') => (true, &mantissa[1..]),
        Some(b'+') => (false, &mantissa[1..]),
        _ => (false, mantissa),
    };
    let (int_part, frac_part) = match digits.find('.') {
        Some(pos) => (&digits[..pos], &digits[pos + 1..]),
        None => (digits, ""),
    };
    if int_part.is_empty() && frac_part.is_empty() {
        return Err(Error::Parse(text.to_string()));
    }
    if !int_part.bytes().chain(frac_part.bytes()).all(|b| b.is_ascii_digit()) {
        return Err(Error::Parse(text.to_string()));
    }
    let joined = format!("{int_part}{frac_part}");
    let mut value = Rational::from(Integer::from_str_radix(&joined, 10).map_err(|_| Error::Parse(text.to_string()))?);
    let scale = exponent - frac_part.len() as i64;
    let ten = Integer::from(10);
    if scale >= 0 {
        value *= Integer::from(ten.pow(scale as u32));
    } else {
        value /= Integer::from(ten.pow((-scale) as u32));
    }
    if negative {
        value = -value;
    }
    Ok(value)
}

/// Decimal digits that are within guarantee for `prec` bits.
pub fn guaranteed_digits(prec: u32) -> usize {
    let digits = (f64::from(prec) * std::f64::consts::LOG10_2).floor() as i64 - 2;
    digits.max(1) as usize
}

/// Scientific decimal rendering with [`guaranteed_digits`] significant digits.
pub fn to_decimal(x: &Float, prec: u32) -> String {
    if x.is_zero() {
        return "0".to_string();
    }
    let digits = guaranteed_digits(prec);
    x.to_string_radix_round(10, Some(digits), Round::Nearest)
}

/// Parses a decimal emitted by [`to_decimal`] back into a float of `prec` bits.
pub fn parse_float(prec: u32, text: &str) -> Result<Float> {
    let parsed = Float::parse(text.trim()).map_err(|_| Error::Parse(text.to_string()))?;
    Ok(Float::with_val(prec, parsed))
}

pub fn floor_rational(x: &Rational) -> Integer {
    x.clone().floor().into_numer_denom().0
}

/// Fractional part `x - floor(x)`, exact.
pub fn frac_rational(x: &Rational) -> Rational {
    let floor = floor_rational(x);
    Rational::from(x - floor)
}

/// `(-1)^n` for an integer `n`.
pub fn parity_sign(n: &Integer) -> i32 {
    if n.is_even() {
        1
    } else {
        -1
    }
}

/// Base-2 exponent estimate of an integer, `None` for zero.
pub fn integer_log2(n: &Integer) -> Option<i64> {
    if *n == 0 {
        None
    } else {
        Some(i64::from(n.significant_bits()))
    }
}

/// Base-2 exponent estimate of a float, `None` for zero.
pub fn float_log2(x: &Float) -> Option<i64> {
    x.get_exp().map(i64::from)
}

/// A complex number with arbitrary-precision parts.
#[derive(Debug, Clone, PartialEq)]
pub struct ComplexReal {
    pub re: Float,
    pub im: Float,
}

impl ComplexReal {
    pub fn new(re: Float, im: Float) -> Self {
        Self { re, im }
    }

    pub fn from_real(re: Float) -> Self {
        let prec = re.prec();
        Self { re, im: Float::new(prec) }
    }

    pub fn zero(prec: u32) -> Self {
        Self { re: Float::new(prec), im: Float::new(prec) }
    }

    pub fn from_rationals(prec: u32, re: &Rational, im: &Rational) -> Self {
        Self { re: Float::with_val(prec, re), im: Float::with_val(prec, im) }
    }

    pub fn prec(&self) -> u32 {
        self.re.prec().max(self.im.prec())
    }

    pub fn is_real(&self) -> bool {
        self.im.is_zero()
    }

    pub fn scale(&self, factor: &Float) -> Self {
        let prec = self.prec();
        Self {
            re: Float::with_val(prec, &self.re * factor),
            im: Float::with_val(prec, &self.im * factor),
        }
    }

    pub fn norm_sqr(&self) -> Float {
        let prec = self.prec();
        Float::with_val(prec, self.re.clone().square() + self.im.clone().square())
    }

    pub fn abs(&self) -> Float {
        self.norm_sqr().sqrt()
    }

    pub fn recip(&self) -> Self {
        let prec = self.prec();
        let n = self.norm_sqr();
        Self {
            re: Float::with_val(prec, &self.re / &n),
            im: Float::with_val(prec, -Float::with_val(prec, &self.im / &n)),
        }
    }

    pub fn div(&self, other: &Self) -> Self {
        self.clone() * other.recip()
    }

    /// `exp(z)`.
    pub fn exp(&self) -> Self {
        let prec = self.prec();
        let modulus = self.re.clone().exp();
        let (sin, cos) = self.im.clone().sin_cos(Float::new(prec));
        Self {
            re: Float::with_val(prec, &modulus * &cos),
            im: Float::with_val(prec, &modulus * &sin),
        }
    }

    /// `base^self` for a positive real base.
    pub fn real_base_pow(base: &Float, exponent: &Self) -> Self {
        let log = base.clone().ln();
        exponent.scale(&log).exp()
    }
}

impl Add for ComplexReal {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        Self { re: self.re + rhs.re, im: self.im + rhs.im }
    }
}

impl Sub for ComplexReal {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        Self { re: self.re - rhs.re, im: self.im - rhs.im }
    }
}

impl Neg for ComplexReal {
    type Output = Self;
    fn neg(self) -> Self {
        Self { re: -self.re, im: -self.im }
    }
}

impl Mul for ComplexReal {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        let prec = self.prec().max(rhs.prec());
        let re = Float::with_val(prec, &self.re * &rhs.re) - Float::with_val(prec, &self.im * &rhs.im);
        let im = Float::with_val(prec, &self.re * &rhs.im) + Float::with_val(prec, &self.im * &rhs.re);
        Self { re, im }
    }
}

/// A complex number with exact rational parts.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct ComplexRational {
    pub re: Rational,
    pub im: Rational,
}

impl ComplexRational {
    pub fn new(re: Rational, im: Rational) -> Self {
        Self { re, im }
    }

    pub fn real(re: Rational) -> Self {
        Self { re, im: Rational::new() }
    }

    pub fn is_real(&self) -> bool {
        self.im == 0
    }

    pub fn to_complex_real(&self, prec: u32) -> ComplexReal {
        ComplexReal::from_rationals(prec, &self.re, &self.im)
    }

    /// Parses `RE`, `RE+IMi`, `RE-IMi` or `IMi`.
    pub fn parse(text: &str) -> Result<Self> {
        let s = text.trim();
        let Some(body) = s.strip_suffix('i') else {
            return Ok(Self::real(parse_rational(s)?));
        };
        // the split point is the last sign that is not part of an exponent
        let bytes = body.as_bytes();
        let mut split = None;
        for pos in (1..bytes.len()).rev() {
            if (bytes[pos] == b'+' || bytes[pos] == b'-') && !matches!(bytes[pos - 1], b'e' | b'E') {
                split = Some(pos);
                break;
            }
        }
        match split {
            Some(pos) => {
                let re = parse_rational(&body[..pos])?;
                let im_text = &body[pos..];
                let im = match im_text {
                    "+" => Rational::from(1),
                    "-" => Rational::from(-1),
                    _ => parse_rational(im_text)?,
                };
                Ok(Self { re, im })
            }
            None => {
                let im = match body {
                    "" | "+" => Rational::from(1),
                    "-" => Rational::from(-1),
                    _ => parse_rational(body)?,
                };
                Ok(Self { re: Rational::new(), im })
            }
        }
    }
}

impl Add for ComplexRational {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        Self { re: self.re + rhs.re, im: self.im + rhs.im }
    }
}

impl Sub for ComplexRational {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        Self { re: self.re - rhs.re, im: self.im - rhs.im }
    }
}

impl Mul for ComplexRational {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        let re = Rational::from(&self.re * &rhs.re) - Rational::from(&self.im * &rhs.im);
        let im = Rational::from(&self.re * &rhs.im) + Rational::from(&self.im * &rhs.re);
        Self { re, im }
    }
}

impl std::fmt::Display for ComplexRational {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.im == 0 {
            write!(f, "{}", self.re)
        } else if self.im < 0 {
            write!(f, "{}{}i", self.re, self.im)
        } else {
            write!(f, "{}+{}i", self.re, self.im)
        }
    }
}
