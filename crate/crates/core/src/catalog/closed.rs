//! Finite closed forms and the power-series geometric displays.

use rug::ops::Pow;
use rug::{Float, Integer, Rational};

use crate::combinatorics::{
    bernoulli_number, bernoulli_polynomial, euler_polynomial, factorial, generalized_binomial, PolynomialKind,
    PolynomialValues,
};
use crate::engine::{adaptive_truncate_from, FactorialSeriesTerm, FormulaResult, TruncationPolicy};
use crate::error::Result;
use crate::real::frac_rational;

use super::{parity, Ctx, Family, FormulaId};

pub(crate) fn evaluate(formula: FormulaId, ctx: &Ctx) -> Result<FormulaResult> {
    match formula.family {
        Family::AltFaulhaberFinite => {
            let m = ctx.m.as_ref().expect("validated").re.numer().to_usize().expect("small m");
            let value = alt_faulhaber_exact(m, &ctx.x, &ctx.n, formula.variant);
            Ok(FormulaResult::exact(Float::with_val(ctx.prec, value)))
        }
        Family::SelfCounting => Ok(FormulaResult::exact(self_counting(&ctx.x, ctx.prec))),
        _ => unreachable!("dispatch sends only closed forms here"),
    }
}

/// `eta(-m)` for integer `m >= 0`, exact.
pub(crate) fn eta_negative_integer(m: usize) -> Rational {
    if m == 0 {
        return Rational::from((1, 2));
    }
    let weight = (Integer::from(1) << (m as u32 + 1)) - 1u32;
    bernoulli_number(m + 1) * weight / (m as u64 + 1)
}

/// The finite alternating power-sum display, exactly. Variant 1 uses
/// `E_k({x})` and powers of `x`; variant 2 uses Bernoulli numbers and powers
/// of `n = floor(x)`.
pub(crate) fn alt_faulhaber_exact(m: usize, x: &Rational, n: &Integer, variant: u8) -> Rational {
    let binomial = |j: usize| generalized_binomial(&Rational::from(m as u64 + 1), j);
    let mut sum = Rational::new();
    if variant == 1 {
        let t = frac_rational(x);
        for k in 0..=m {
            let term = Rational::from((k + 1) as u64) * binomial(k + 1) * euler_polynomial(k).eval(&t)
                * x.clone().pow((m - k) as i32);
            if k % 2 == 0 {
                sum -= term;
            } else {
                sum += term;
            }
        }
        sum /= 2 * (m as u64 + 1);
    } else {
        let n = Rational::from(n.clone());
        for k in 0..=m {
            let weight = (Integer::from(1) << (k as u32 + 1)) - 1u32;
            let term = binomial(k + 1) * bernoulli_number(k + 1) * weight * n.clone().pow((m - k) as u32);
            if k % 2 == 0 {
                sum += term;
            } else {
                sum -= term;
            }
        }
        sum /= m as u64 + 1;
    }
    if n.is_odd() {
        sum = -sum;
    }
    eta_negative_integer(m) + sum
}

/// The self-counting closed form. Exact whenever `8x + 1` is the square of
/// a rational.
pub(crate) fn self_counting(x: &Rational, prec: u32) -> Float {
    let square = Rational::from(x * 8u32) + 1u32;
    let (num, den) = (square.numer().clone(), square.denom().clone());
    if num.is_perfect_square() && den.is_perfect_square() {
        let r = Rational::from((num.sqrt(), den.sqrt()));
        let t = frac_rational(x);
        let u = frac_rational(&(Rational::from(&r / 2u32) - Rational::from((1, 2))));
        let b = |k: usize, at: &Rational| bernoulli_polynomial(k).eval(at);
        let value = Rational::from(x * &r) / 3u32 - Rational::from(&r * 5u32) / 24u32 - Rational::from(&r / 2u32) * b(1, &t)
            + b(1, &u) * b(1, &t)
            + b(1, &u) / 2u32
            - Rational::from(&r / 4u32) * b(2, &u)
            + b(3, &u) / 6u32;
        return Float::with_val(prec, value);
    }
    let work = prec + 32;
    let xf = Float::with_val(work, x);
    let r = Float::with_val(work, &square).sqrt();
    let t = Float::with_val(work, frac_rational(x));
    let half_r = Float::with_val(work, &r / 2u32) - 0.5f64;
    let u = Float::with_val(work, &half_r - Float::with_val(work, half_r.floor_ref()));
    let b = |k: usize, at: &Float| bernoulli_polynomial(k).eval_float(at);
    let value = Float::with_val(work, &xf * &r) / 3u32 - Float::with_val(work, &r * 5u32) / 24u32
        - Float::with_val(work, &r / 2u32) * b(1, &t)
        + b(1, &u) * b(1, &t)
        + b(1, &u) / 2u32
        - Float::with_val(work, &r / 4u32) * b(2, &u)
        + b(3, &u) / 6u32;
    Float::with_val(prec, value)
}

/// `offset + prefactor * sum_{k >= start} (-1)^k L^(k-1) B_k({x}) / k!`.
pub(crate) fn evaluate_power_series(formula: FormulaId, ctx: &Ctx, policy: &TruncationPolicy) -> Result<FormulaResult> {
    let prec = ctx.prec;
    let (log_a, offset, prefactor, start) = match formula.family {
        Family::GeometricEm => {
            let a = ctx.a.clone().expect("validated");
            let a_x = ctx.a_pow_x();
            let offset = Float::with_val(prec, &a_x / ctx.log_a()) + ctx.f(Rational::from(1) / (1 - a));
            (ctx.log_a(), offset, a_x, 1usize)
        }
        Family::AltGeometricEm => {
            let a = ctx.a.clone().expect("validated");
            let offset = ctx.f(Rational::from(1) / (Rational::from(1) + &a));
            let ratio = ctx.f(Rational::from(&a - 1u32) / (a + 1u32));
            let prefactor = parity(&ctx.n, prec) * ctx.a_pow_x() * ratio;
            (ctx.log_a(), offset, prefactor, 0usize)
        }
        _ => {
            let e_x = ctx.xf().exp();
            let e = Float::with_val(prec, 1).exp();
            let offset = Float::with_val(prec, &e_x) + Float::with_val(prec, 1 - e).recip();
            (Float::with_val(prec, 1), offset, e_x, 1usize)
        }
    };
    let values = PolynomialValues::cached(PolynomialKind::Bernoulli, &ctx.t, policy.capacity_needed() + start + 2);
    let terms = (start..values.len()).map(move |k| {
        let power = Float::with_val(prec, (&log_a).pow(k as i32 - 1));
        let mut value = Float::with_val(prec, values.get(k)) * power * &prefactor / Float::with_val(prec, factorial(k));
        if k % 2 == 1 {
            value = -value;
        }
        FactorialSeriesTerm::real(k, value)
    });
    Ok(adaptive_truncate_from(offset, None, terms, policy))
}
