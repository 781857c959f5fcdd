//! Finite Euler–Maclaurin and Boole summation with explicit remainders.
//!
//! Both reconstruct a finite sum over `k <= floor(x)` from boundary terms at
//! `1` and `x` plus a remainder integral over `[1, x]`. The integrands contain
//! `B_m({t})` or `(-1)^floor(t) E_m({t})` and are only piecewise smooth, so
//! the integral is taken panel by panel between consecutive integers.

use rug::Float;

use crate::combinatorics::{bernoulli_numbers, bernoulli_polynomial, euler_polynomial, factorial, RationalPolynomial};
use crate::error::{Error, Result};

use super::functions::SmoothFunction;
use super::quadrature::integrate;

fn check_domain(x: &Float) -> Result<()> {
    if *x <= 1 {
        return Err(Error::Domain(format!("x must exceed 1, got {}", x.to_f64())));
    }
    Ok(())
}

/// Break points `1, 2, ..., floor(x), x` (the last dropped when `x` is an integer).
fn panels(x: &Float) -> Vec<Float> {
    let prec = x.prec();
    let n = x.clone().floor().to_integer().expect("finite x").to_u64().expect("x fits in u64");
    let mut points: Vec<Float> = (1..=n).map(|k| Float::with_val(prec, k)).collect();
    if !x.is_integer() {
        points.push(x.clone());
    }
    points
}

fn piecewise<F: Fn(&Float, u64) -> Float>(x: &Float, tol: &Float, f: F) -> Result<Float> {
    let prec = x.prec();
    let points = panels(x);
    let count = points.len().saturating_sub(1).max(1) as u32;
    let panel_tol = Float::with_val(prec, tol / count);
    let mut acc = Float::new(prec);
    for pair in points.windows(2) {
        let floor = pair[0].to_f64() as u64;
        let integrand = |t: &Float| f(t, floor);
        acc += integrate(&integrand, &pair[0], &pair[1], &panel_tol)?;
    }
    Ok(acc)
}

fn frac(t: &Float, floor: u64) -> Float {
    Float::with_val(t.prec(), t - floor)
}

/// `sum_{k=1}^{floor(x)} f(k)` from the order-`m` Euler–Maclaurin formula.
pub fn euler_maclaurin_finite(f: &dyn SmoothFunction, x: &Float, m: usize, quadrature_tolerance: &Float) -> Result<Float> {
    check_domain(x)?;
    if m == 0 {
        return Err(Error::Parameter("order m must be positive".into()));
    }
    let prec = x.prec();
    let one = Float::with_val(prec, 1u32);
    let t = Float::with_val(prec, x - Float::with_val(prec, x.floor_ref()));
    let numbers = bernoulli_numbers(m + 1);
    let mut acc = f.integral(&one, x);
    for k in 1..=m {
        let fact = Float::with_val(prec, factorial(k));
        let at_x = bernoulli_polynomial(k).eval_float(&t) * f.derivative(k - 1, x) / &fact;
        if k % 2 == 1 {
            acc -= at_x;
        } else {
            acc += at_x;
        }
        acc -= Float::with_val(prec, &numbers[k]) * f.derivative(k - 1, &one) / &fact;
    }
    let poly = bernoulli_polynomial(m);
    let remainder = piecewise(x, quadrature_tolerance, |u, floor| {
        poly.eval_float(&frac(u, floor)) * f.derivative(m, u)
    })?;
    let scale = Float::with_val(prec, factorial(m));
    let remainder = remainder / scale;
    if m % 2 == 1 {
        acc += remainder;
    } else {
        acc -= remainder;
    }
    Ok(acc)
}

/// `sum_{k=1}^{floor(x)} (-1)^(k+1) f(k)` from the order-`m` Boole formula.
pub fn boole_finite(f: &dyn SmoothFunction, x: &Float, m: usize, quadrature_tolerance: &Float) -> Result<Float> {
    check_domain(x)?;
    let prec = x.prec();
    let one = Float::with_val(prec, 1u32);
    let floor_x = Float::with_val(prec, x.floor_ref());
    let n_odd = floor_x.to_integer().expect("finite x").is_odd();
    let t = Float::with_val(prec, x - &floor_x);
    let numbers = bernoulli_numbers(m + 2);

    let mut boundary = Float::new(prec);
    for k in 0..=m {
        let fact = Float::with_val(prec, factorial(k));
        let term = euler_polynomial(k).eval_float(&t) * f.derivative(k, x) / fact;
        if k % 2 == 1 {
            boundary += term;
        } else {
            boundary -= term;
        }
    }
    boundary /= 2u32;
    if n_odd {
        boundary = -boundary;
    }
    let mut acc = boundary;
    for k in 0..=m {
        let weight = (rug::Integer::from(1) << (k as u32 + 1)) - 1u32;
        let coeff = Float::with_val(prec, &numbers[k + 1]) * weight / Float::with_val(prec, factorial(k + 1));
        acc -= coeff * f.derivative(k, &one);
    }
    let poly: RationalPolynomial = euler_polynomial(m);
    let remainder = piecewise(x, quadrature_tolerance, |u, floor| {
        let value = poly.eval_float(&frac(u, floor)) * f.derivative(m + 1, u);
        if floor % 2 == 1 {
            -value
        } else {
            value
        }
    })?;
    let remainder = remainder / Float::with_val(prec, factorial(m)) / 2u32;
    if m % 2 == 1 {
        acc -= remainder;
    } else {
        acc += remainder;
    }
    Ok(acc)
}

/// The Boole formula at an integer upper limit `n`, remainder over `[1, n]`.
pub fn boole_at_integer(f: &dyn SmoothFunction, n: u64, m: usize, quadrature_tolerance: &Float, prec: u32) -> Result<Float> {
    boole_finite(f, &Float::with_val(prec, n), m, quadrature_tolerance)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::engine::functions::{Log, Power};

    fn tol(prec: u32, v: f64) -> Float {
        Float::with_val(prec, v)
    }

    fn assert_close(a: &Float, b: &Float, eps: f64) {
        let diff = Float::with_val(a.prec(), a - b).abs();
        assert!(diff < eps, "{a} vs {b}: {diff}");
    }

    #[test]
    fn harmonic_example() {
        let prec = 192;
        let x = Float::with_val(prec, 5u32);
        let value = euler_maclaurin_finite(&Power::inverse(), &x, 4, &tol(prec, 1e-30)).unwrap();
        let expected = Float::with_val(prec, 137u32) / 60u32;
        assert_close(&value, &expected, 1e-29);
    }

    #[test]
    fn polynomial_remainder_vanishes() {
        let prec = 192;
        let x = Float::with_val(prec, 4.5);
        let value = euler_maclaurin_finite(&Power::square(), &x, 3, &tol(prec, 1e-30)).unwrap();
        assert_close(&value, &Float::with_val(prec, 30u32), 1e-40);
    }

    #[test]
    fn sqrt_example() {
        let prec = 192;
        let x = Float::with_val(prec, 3.25);
        let value = euler_maclaurin_finite(&Power::sqrt(), &x, 5, &tol(prec, 1e-30)).unwrap();
        let expected = Float::with_val(prec, 1u32) + Float::with_val(prec, 2u32).sqrt() + Float::with_val(prec, 3u32).sqrt();
        assert_close(&value, &expected, 1e-29);
    }

    #[test]
    fn alternating_examples() {
        let prec = 192;
        let value = boole_finite(&Power::inverse(), &Float::with_val(prec, 4.5), 3, &tol(prec, 1e-30)).unwrap();
        assert_close(&value, &(Float::with_val(prec, 7u32) / 12u32), 1e-29);
        let value = boole_finite(&Power::constant_one(), &Float::with_val(prec, 5u32), 1, &tol(prec, 1e-30)).unwrap();
        assert_close(&value, &Float::with_val(prec, 1u32), 1e-40);
        let x = Float::with_val(prec, 6.5);
        let value = boole_finite(&Power::inverse_odd(), &x, 4, &tol(prec, 1e-30)).unwrap();
        let mut expected = Float::new(prec);
        for k in 1..=6u32 {
            let term = Float::with_val(prec, 1u32) / (2 * k + 1);
            if k % 2 == 1 {
                expected += term;
            } else {
                expected -= term;
            }
        }
        assert_close(&value, &expected, 1e-29);
    }

    #[test]
    fn log_and_integer_limit() {
        let prec = 192;
        let x = Float::with_val(prec, 3.7);
        let value = euler_maclaurin_finite(&Log, &x, 2, &tol(prec, 1e-30)).unwrap();
        let expected = Float::with_val(prec, 6u32).ln();
        assert_close(&value, &expected, 1e-29);
        let value = boole_at_integer(&Log, 4, 2, &tol(prec, 1e-30), prec).unwrap();
        // log 1 - log 2 + log 3 - log 4 = log(3/8)
        let expected = Float::with_val(prec, Float::with_val(prec, 3u32) / 8u32).ln();
        assert_close(&value, &expected, 1e-29);
    }

    #[test]
    fn domain_error() {
        let x = Float::with_val(128, 1u32);
        assert!(matches!(euler_maclaurin_finite(&Log, &x, 2, &tol(128, 1e-20)), Err(Error::Domain(_))));
    }
}
