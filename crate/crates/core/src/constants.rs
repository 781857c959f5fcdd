//! Mathematical constants at a requested binary precision.
//!
//! Zeta values come from an Euler–Maclaurin evaluation with `N` direct terms
//! and `M` Bernoulli corrections; `zeta'` uses the same sum differentiated
//! term by term in `s`. `gamma` and `gamma_1` use the Euler–Maclaurin tails of
//! `sum 1/k` and `sum log(k)/k`. Every result is computed with 32 extra bits
//! and rounded to the requested precision; values are cached per request.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;
use std::sync::{Mutex, OnceLock};

use rug::float::Constant;
use rug::{Float, Rational};
use serde::{Deserialize, Serialize};

use crate::combinatorics::{bernoulli_numbers, factorial};
use crate::error::{Error, Result};
use crate::real::{parse_rational, ComplexRational, ComplexReal, MIN_PREC};

/// Identifier of a supported constant.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum ConstantId {
    Zeta(Rational),
    ZetaPrime(Rational),
    Eta(Rational),
    EulerGamma,
    Stieltjes1,
    Pi,
    LogTwoPi,
    LogTwo,
}

impl fmt::Display for ConstantId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ConstantId::Zeta(s) => write!(f, "zeta({s})"),
            ConstantId::ZetaPrime(s) => write!(f, "zeta_prime({s})"),
            ConstantId::Eta(s) => write!(f, "eta({s})"),
            ConstantId::EulerGamma => write!(f, "euler_gamma"),
            ConstantId::Stieltjes1 => write!(f, "stieltjes_1"),
            ConstantId::Pi => write!(f, "pi"),
            ConstantId::LogTwoPi => write!(f, "log_two_pi"),
            ConstantId::LogTwo => write!(f, "log_two"),
        }
    }
}

impl FromStr for ConstantId {
    type Err = Error;

    fn from_str(text: &str) -> Result<Self> {
        let unknown = || Error::UnknownConstant(text.to_string());
        let s = text.trim();
        let simple = match s {
            "euler_gamma" | "gamma" => Some(ConstantId::EulerGamma),
            "stieltjes_1" | "gamma_1" => Some(ConstantId::Stieltjes1),
            "pi" => Some(ConstantId::Pi),
            "log_two_pi" => Some(ConstantId::LogTwoPi),
            "log_two" => Some(ConstantId::LogTwo),
            _ => None,
        };
        if let Some(id) = simple {
            return Ok(id);
        }
        let open = s.find('(').ok_or_else(unknown)?;
        let arg = s[open + 1..].strip_suffix(')').ok_or_else(unknown)?;
        let value = parse_rational(arg).map_err(|_| unknown())?;
        match &s[..open] {
            "zeta" => Ok(ConstantId::Zeta(value)),
            "zeta_prime" => Ok(ConstantId::ZetaPrime(value)),
            "eta" => Ok(ConstantId::Eta(value)),
            _ => Err(unknown()),
        }
    }
}

impl Serialize for ConstantId {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for ConstantId {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let text = String::deserialize(deserializer)?;
        text.parse().map_err(serde::de::Error::custom)
    }
}

/// A constant at a precision in bits.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ConstantRequest {
    pub constant_id: ConstantId,
    pub precision_bits: u32,
}

impl ConstantRequest {
    pub fn new(constant_id: ConstantId, precision_bits: u32) -> Self {
        Self { constant_id, precision_bits }
    }
}

/// The constants referenced by the formula catalog, in a stable order.
pub fn catalog_constants() -> Vec<ConstantId> {
    let q = |n: i64, d: i64| Rational::from((n, d));
    vec![
        ConstantId::Pi,
        ConstantId::LogTwo,
        ConstantId::LogTwoPi,
        ConstantId::EulerGamma,
        ConstantId::Stieltjes1,
        ConstantId::Zeta(q(1, 2)),
        ConstantId::Zeta(q(3, 2)),
        ConstantId::Zeta(q(2, 1)),
        ConstantId::Zeta(q(5, 2)),
        ConstantId::Zeta(q(3, 1)),
        ConstantId::Zeta(q(7, 2)),
        ConstantId::ZetaPrime(q(-1, 1)),
        ConstantId::ZetaPrime(q(2, 1)),
        ConstantId::Eta(q(1, 1)),
        ConstantId::Eta(q(-1, 1)),
    ]
}

/// Value of a constant with relative error below `2^-(precision_bits - 8)`.
pub fn get_constant(req: &ConstantRequest) -> Result<Float> {
    if req.precision_bits < MIN_PREC {
        return Err(Error::Parameter(format!(
            "precision must be at least {MIN_PREC} bits, got {}",
            req.precision_bits
        )));
    }
    type Cache = Mutex<HashMap<ConstantRequest, Float>>;
    static CACHE: OnceLock<Cache> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(found) = cache.lock().expect("constant cache poisoned").get(req) {
        return Ok(found.clone());
    }
    let prec = req.precision_bits;
    let work = prec + 32;
    let value = match &req.constant_id {
        ConstantId::Zeta(s) => zeta_rational(s, work)?,
        ConstantId::ZetaPrime(s) => zeta_prime_em(&Float::with_val(work, s), work)?,
        ConstantId::Eta(s) => eta_rational(s, work)?,
        ConstantId::EulerGamma => euler_gamma_em(work),
        ConstantId::Stieltjes1 => stieltjes1_em(work),
        ConstantId::Pi => Float::with_val(work, Constant::Pi),
        ConstantId::LogTwoPi => log_two_pi(work),
        ConstantId::LogTwo => Float::with_val(work, Constant::Log2),
    };
    let value = Float::with_val(prec, value);
    cache.lock().expect("constant cache poisoned").insert(req.clone(), value.clone());
    Ok(value)
}

/// Shorthand for [`get_constant`].
pub fn constant(id: ConstantId, precision_bits: u32) -> Result<Float> {
    get_constant(&ConstantRequest::new(id, precision_bits))
}

pub fn pi(prec: u32) -> Float {
    Float::with_val(prec, Constant::Pi)
}

pub fn log_two(prec: u32) -> Float {
    Float::with_val(prec, Constant::Log2)
}

pub fn log_two_pi(prec: u32) -> Float {
    let two_pi = Float::with_val(prec + 8, Constant::Pi) * 2u32;
    Float::with_val(prec, two_pi.ln())
}

fn zeta_rational(s: &Rational, prec: u32) -> Result<Float> {
    if *s == 1 {
        return Err(Error::Pole);
    }
    if *s.denom() == 1 && *s < 0 && s.numer().is_even() {
        return Ok(Float::new(prec));
    }
    zeta_em(&Float::with_val(prec, s), prec)
}

fn eta_rational(s: &Rational, prec: u32) -> Result<Float> {
    if *s == 1 {
        return Ok(Float::with_val(prec, Constant::Log2));
    }
    let zeta = zeta_rational(s, prec + 16)?;
    let power = Float::with_val(prec + 16, Float::with_val(prec + 16, 1 - Rational::from(s)).exp2());
    Ok(Float::with_val(prec, (1 - power) * zeta))
}

/// Direct-term count and correction count for `prec` bits at argument `s`.
fn em_parameters(s_abs: f64, prec: u32) -> (u64, usize) {
    let base = (f64::from(prec) / 5.0).ceil() as u64 + 10;
    let n = base + s_abs.ceil() as u64;
    let m = base as usize;
    (n, m)
}

/// Extra working bits to absorb cancellation between the direct sum and the
/// tail when `Re s < 1`.
fn cancellation_bits(re_s: f64, n: u64) -> u32 {
    let growth = (1.0 - re_s).max(0.0) * (n as f64).log2();
    growth.ceil() as u32 + 64 - n.leading_zeros()
}

/// `zeta(s)` for real `s != 1` by Euler–Maclaurin summation.
pub fn zeta_em(s: &Float, precision_bits: u32) -> Result<Float> {
    if *s == 1 {
        return Err(Error::Pole);
    }
    let s_f = s.to_f64();
    let (n, m) = em_parameters(s_f.abs(), precision_bits);
    let work = precision_bits + 16 + cancellation_bits(s_f, n);
    let s = Float::with_val(work, s);
    let bernoulli = bernoulli_numbers(2 * m + 1);

    let mut sum = Float::new(work);
    for k in 1..n {
        let log_k = Float::with_val(work, k).ln();
        sum += Float::with_val(work, -Float::with_val(work, &s * &log_k)).exp();
    }
    let big_n = Float::with_val(work, n);
    let log_n = big_n.clone().ln();
    let n_pow_neg_s = Float::with_val(work, -Float::with_val(work, &s * &log_n)).exp();
    let s_minus_one = Float::with_val(work, &s - 1u32);
    sum += Float::with_val(work, &n_pow_neg_s * &big_n) / &s_minus_one;
    sum += Float::with_val(work, &n_pow_neg_s / 2u32);

    // P_j = s(s+1)...(s+2j-2), term_j = B_2j/(2j)! P_j N^(-s-2j+1)
    let mut rising = s.clone();
    let mut power = Float::with_val(work, &n_pow_neg_s / &big_n);
    let n_sq = Float::with_val(work, &big_n * &big_n);
    for j in 1..=m {
        let coeff = Float::with_val(work, &bernoulli[2 * j]) / Float::with_val(work, factorial(2 * j));
        sum += coeff * Float::with_val(work, &rising * &power);
        let a = Float::with_val(work, &s + (2 * j - 1) as u64);
        let b = Float::with_val(work, &s + (2 * j) as u64);
        rising *= a * b;
        power /= &n_sq;
    }
    Ok(Float::with_val(precision_bits, sum))
}

/// `zeta'(s)` for real `s != 1`: the Euler–Maclaurin sum differentiated in `s`.
pub fn zeta_prime_em(s: &Float, precision_bits: u32) -> Result<Float> {
    if *s == 1 {
        return Err(Error::Pole);
    }
    let s_f = s.to_f64();
    let (n, m) = em_parameters(s_f.abs(), precision_bits);
    let work = precision_bits + 24 + cancellation_bits(s_f, n);
    let s = Float::with_val(work, s);
    let bernoulli = bernoulli_numbers(2 * m + 1);

    let mut sum = Float::new(work);
    for k in 1..n {
        let log_k = Float::with_val(work, k).ln();
        let power = Float::with_val(work, -Float::with_val(work, &s * &log_k)).exp();
        sum -= log_k * power;
    }
    let big_n = Float::with_val(work, n);
    let log_n = big_n.clone().ln();
    let n_pow_neg_s = Float::with_val(work, -Float::with_val(work, &s * &log_n)).exp();
    let s_minus_one = Float::with_val(work, &s - 1u32);
    let n_pow_one_minus_s = Float::with_val(work, &n_pow_neg_s * &big_n);
    // d/ds N^(1-s)/(s-1)
    let first = Float::with_val(work, &log_n / &s_minus_one)
        + Float::with_val(work, Float::with_val(work, 1u32) / Float::with_val(work, &s_minus_one * &s_minus_one));
    sum -= first * &n_pow_one_minus_s;
    // d/ds N^(-s)/2
    sum -= Float::with_val(work, &log_n * &n_pow_neg_s) / 2u32;

    let mut rising = s.clone();
    let mut rising_prime = Float::with_val(work, 1u32);
    let mut power = Float::with_val(work, &n_pow_neg_s / &big_n);
    let n_sq = Float::with_val(work, &big_n * &big_n);
    for j in 1..=m {
        let coeff = Float::with_val(work, &bernoulli[2 * j]) / Float::with_val(work, factorial(2 * j));
        let inner = Float::with_val(work, &rising_prime - Float::with_val(work, &log_n * &rising));
        sum += coeff * Float::with_val(work, &inner * &power);
        let a = Float::with_val(work, &s + (2 * j - 1) as u64);
        let b = Float::with_val(work, &s + (2 * j) as u64);
        let ab = Float::with_val(work, &a * &b);
        let a_plus_b = Float::with_val(work, &a + &b);
        rising_prime = Float::with_val(work, &rising_prime * &ab) + Float::with_val(work, &rising * &a_plus_b);
        rising *= ab;
        power /= &n_sq;
    }
    Ok(Float::with_val(precision_bits, sum))
}

/// `zeta(s)` for complex `s != 1` by the same Euler–Maclaurin scheme.
pub fn zeta_complex(s: &ComplexRational, precision_bits: u32) -> Result<ComplexReal> {
    if s.is_real() {
        return zeta_rational(&s.re, precision_bits).map(ComplexReal::from_real);
    }
    let re_f = s.re.to_f64();
    let im_f = s.im.to_f64();
    let (n, m) = em_parameters(re_f.abs() + im_f.abs(), precision_bits);
    let work = precision_bits + 16 + cancellation_bits(re_f, n);
    let s = s.to_complex_real(work);
    let neg_s = -s.clone();
    let bernoulli = bernoulli_numbers(2 * m + 1);

    let mut sum = ComplexReal::zero(work);
    for k in 1..n {
        sum = sum + ComplexReal::real_base_pow(&Float::with_val(work, k), &neg_s);
    }
    let big_n = Float::with_val(work, n);
    let n_pow_neg_s = ComplexReal::real_base_pow(&big_n, &neg_s);
    let one = ComplexReal::from_real(Float::with_val(work, 1u32));
    let s_minus_one = s.clone() - one;
    sum = sum + n_pow_neg_s.scale(&big_n).div(&s_minus_one);
    sum = sum + n_pow_neg_s.scale(&Float::with_val(work, 0.5));

    let mut rising = s.clone();
    let mut power = n_pow_neg_s.scale(&Float::with_val(work, big_n.recip_ref()));
    let inv_n_sq = Float::with_val(work, Float::with_val(work, &big_n * &big_n).recip_ref());
    for j in 1..=m {
        let coeff = Float::with_val(work, &bernoulli[2 * j]) / Float::with_val(work, factorial(2 * j));
        sum = sum + (rising.clone() * power.clone()).scale(&coeff);
        let shift = |d: u64| ComplexReal::new(Float::with_val(work, &s.re + d), s.im.clone());
        rising = rising * shift((2 * j - 1) as u64) * shift((2 * j) as u64);
        power = power.scale(&inv_n_sq);
    }
    Ok(ComplexReal::new(
        Float::with_val(precision_bits, &sum.re),
        Float::with_val(precision_bits, &sum.im),
    ))
}

/// `eta(s) = (1 - 2^(1-s)) zeta(s)` for complex `s`.
pub fn eta_complex(s: &ComplexRational, precision_bits: u32) -> Result<ComplexReal> {
    if s.is_real() {
        return eta_rational(&s.re, precision_bits).map(ComplexReal::from_real);
    }
    let work = precision_bits + 16;
    let zeta = zeta_complex(s, work)?;
    let one_minus_s = ComplexRational::real(Rational::from(1)) - s.clone();
    let power = ComplexReal::real_base_pow(&Float::with_val(work, 2u32), &one_minus_s.to_complex_real(work));
    let factor = ComplexReal::from_real(Float::with_val(work, 1u32)) - power;
    let value = factor * zeta;
    Ok(ComplexReal::new(
        Float::with_val(precision_bits, &value.re),
        Float::with_val(precision_bits, &value.im),
    ))
}

/// `gamma = H_N - log N - 1/(2N) + sum_j B_2j / (2j N^2j)`.
pub fn euler_gamma_em(precision_bits: u32) -> Float {
    let work = precision_bits + 16;
    let n = u64::from(precision_bits) / 5 + 10;
    let m = n as usize;
    let bernoulli = bernoulli_numbers(2 * m + 1);
    let mut harmonic = Rational::new();
    for k in 1..=n {
        harmonic += Rational::from((1, k));
    }
    let big_n = Float::with_val(work, n);
    let mut sum = Float::with_val(work, &harmonic) - big_n.clone().ln();
    sum -= Float::with_val(work, big_n.recip_ref()) / 2u32;
    let inv_n_sq = Float::with_val(work, Float::with_val(work, &big_n * &big_n).recip_ref());
    let mut power = inv_n_sq.clone();
    for j in 1..=m {
        let coeff = Float::with_val(work, &bernoulli[2 * j]) / (2 * j) as u64;
        sum += coeff * &power;
        power *= &inv_n_sq;
    }
    Float::with_val(precision_bits, sum)
}

/// First Stieltjes constant from the Euler–Maclaurin tail of `sum log(k)/k`.
pub fn stieltjes1_em(precision_bits: u32) -> Float {
    let work = precision_bits + 16;
    let n = u64::from(precision_bits) / 5 + 10;
    let m = n as usize;
    let bernoulli = bernoulli_numbers(2 * m + 1);
    let mut sum = Float::new(work);
    for k in 2..=n {
        let big_k = Float::with_val(work, k);
        sum += big_k.clone().ln() / big_k;
    }
    let big_n = Float::with_val(work, n);
    let log_n = big_n.clone().ln();
    sum -= Float::with_val(work, log_n.clone().square()) / 2u32;
    sum -= Float::with_val(work, &log_n / &big_n) / 2u32;
    let inv_n_sq = Float::with_val(work, Float::with_val(work, &big_n * &big_n).recip_ref());
    let mut power = inv_n_sq.clone();
    // H_{2j-1}, advanced by two terms per step
    let mut harmonic_odd = Rational::from(1);
    for j in 1..=m {
        let coeff = Float::with_val(work, &bernoulli[2 * j]) / (2 * j) as u64;
        let weight = Float::with_val(work, &log_n - Float::with_val(work, &harmonic_odd));
        sum += coeff * weight * &power;
        power *= &inv_n_sq;
        harmonic_odd += Rational::from((1, 2 * j as u64)) + Rational::from((1, 2 * j as u64 + 1));
    }
    Float::with_val(precision_bits, sum)
}
