//! FresnelS, the cosine integral, and the two slowly convergent displays
//! built on them.

use rug::float::Constant;
use rug::{Float, Rational};

use crate::combinatorics::bernoulli_polynomial;
use crate::constants::{constant, ConstantId};
use crate::engine::{FormulaResult, Status};
use crate::error::{Error, Result};
use crate::real::{frac_rational, MIN_PREC};

/// Smallest argument at which [`fresnel_s`] may use its asymptotic expansion.
pub const FRESNEL_SWITCH: f64 = 8.0;
/// Smallest argument at which [`cos_integral`] may use its asymptotic expansion.
pub const CI_SWITCH: f64 = 20.0;

/// `S(z) = int_0^z sin(pi t^2 / 2) dt` for `z >= 0`.
pub fn fresnel_s(z: &Float, precision_bits: u32) -> Float {
    fresnel_s_with_switch(z, precision_bits, FRESNEL_SWITCH)
}

/// [`fresnel_s`] with an explicit series/asymptotic crossover. The asymptotic
/// branch is taken only above `switch` and only when its optimal truncation
/// error, about `exp(-pi z^2 / 2)`, is below the target precision.
pub fn fresnel_s_with_switch(z: &Float, precision_bits: u32, switch: f64) -> Float {
    let prec = precision_bits.max(MIN_PREC);
    if z.is_zero() {
        return Float::new(prec);
    }
    if z.is_sign_negative() {
        return -fresnel_s_with_switch(&Float::with_val(prec, -z), precision_bits, switch);
    }
    let zf = z.to_f64();
    let w = std::f64::consts::PI * zf * zf / 2.0;
    let asymptotic_ok = w * std::f64::consts::LOG2_E > f64::from(prec) + 16.0;
    if zf > switch && asymptotic_ok {
        fresnel_asymptotic(z, prec)
    } else {
        fresnel_series(z, prec, w)
    }
}

fn fresnel_series(z: &Float, prec: u32, w_f64: f64) -> Float {
    let pad = (w_f64 * std::f64::consts::LOG2_E).ceil() as u32 + 32;
    let work = prec + pad;
    let z = Float::with_val(work, z);
    let w = Float::with_val(work, Constant::Pi) * Float::with_val(work, z.square_ref()) / 2u32;
    let w_sq = Float::with_val(work, w.square_ref());
    let eps = Float::with_val(work, Float::i_exp(1, -(prec as i32) - 16));
    // power = (-1)^n w^(2n+1) / (2n+1)!
    let mut power = w.clone();
    let mut sum = Float::new(work);
    let mut n: u64 = 0;
    loop {
        let term = Float::with_val(work, &power / (4 * n + 3));
        sum += &term;
        if term.abs() < eps && Float::with_val(work, power.abs_ref()) < eps {
            break;
        }
        power *= &w_sq;
        power /= (2 * n + 2) * (2 * n + 3);
        power = -power;
        n += 1;
    }
    Float::with_val(prec, sum * z)
}

/// `sum_m t_m` with `t_0 = first`, `t_m = -t_{m-1} factor(m) / divisor`,
/// stopped at the smallest term or once terms fall below `eps`.
fn optimal_sum(first: Float, divisor: &Float, factor: impl Fn(u64) -> u64, eps: &Float) -> Float {
    let prec = first.prec();
    let mut sum = first.clone();
    let mut term = first;
    let mut m: u64 = 1;
    loop {
        let magnitude = Float::with_val(prec, term.abs_ref());
        if magnitude < *eps {
            break;
        }
        let next = -(Float::with_val(prec, &term * factor(m)) / divisor);
        if Float::with_val(prec, next.abs_ref()) >= magnitude {
            break;
        }
        sum += &next;
        term = next;
        m += 1;
    }
    sum
}

fn fresnel_asymptotic(z: &Float, prec: u32) -> Float {
    let work = prec + 32 + (z.to_f64().log2().max(0.0) * 2.0).ceil() as u32;
    let z = Float::with_val(work, z);
    let pi = Float::with_val(work, Constant::Pi);
    let pz2 = Float::with_val(work, &pi * Float::with_val(work, z.square_ref()));
    let pz2_sq = Float::with_val(work, pz2.square_ref());
    let eps = Float::with_val(work, Float::i_exp(1, -(prec as i32) - 16));
    // pi z f(z) ~ sum (-1)^m (4m-1)!! / (pi z^2)^(2m)
    let mut f = optimal_sum(Float::with_val(work, 1), &pz2_sq, |m| (4 * m - 1) * (4 * m - 3), &eps);
    // pi z g(z) ~ sum (-1)^m (4m+1)!! / (pi z^2)^(2m+1)
    let mut g = optimal_sum(Float::with_val(work, pz2.recip_ref()), &pz2_sq, |m| (4 * m + 1) * (4 * m - 1), &eps);
    let pi_z = Float::with_val(work, &pi * &z);
    f /= &pi_z;
    g /= &pi_z;
    let theta = Float::with_val(work, &pz2 / 2u32);
    let (sin, cos) = theta.sin_cos(Float::new(work));
    let value = Float::with_val(work, 0.5) - f * cos - g * sin;
    Float::with_val(prec, value)
}

/// `Ci(z) = gamma + log z + int_0^z (cos t - 1)/t dt` for `z > 0`.
pub fn cos_integral(z: &Float, precision_bits: u32) -> Result<Float> {
    cos_integral_with_switch(z, precision_bits, CI_SWITCH)
}

/// [`cos_integral`] with an explicit crossover; the asymptotic branch needs
/// `z > switch` and `exp(-z)` below the target precision.
pub fn cos_integral_with_switch(z: &Float, precision_bits: u32, switch: f64) -> Result<Float> {
    if !(*z > 0) {
        return Err(Error::Domain("Ci needs z > 0".into()));
    }
    let prec = precision_bits.max(MIN_PREC);
    let zf = z.to_f64();
    let asymptotic_ok = zf * std::f64::consts::LOG2_E > f64::from(prec) + 16.0;
    if zf > switch && asymptotic_ok {
        Ok(ci_asymptotic(z, prec))
    } else {
        ci_series(z, prec)
    }
}

fn ci_series(z: &Float, prec: u32) -> Result<Float> {
    let pad = (z.to_f64() * std::f64::consts::LOG2_E).ceil() as u32 + 32;
    let work = prec + pad;
    let z = Float::with_val(work, z);
    let z_sq = Float::with_val(work, z.square_ref());
    let eps = Float::with_val(work, Float::i_exp(1, -(prec as i32) - 16));
    // power = (-1)^n z^(2n) / (2n)!
    let mut power = Float::with_val(work, 1);
    let mut sum = Float::new(work);
    let mut n: u64 = 1;
    loop {
        power *= &z_sq;
        power /= (2 * n - 1) * (2 * n);
        power = -power;
        let term = Float::with_val(work, &power / (2 * n));
        sum += &term;
        if term.abs() < eps && Float::with_val(work, power.abs_ref()) < eps {
            break;
        }
        n += 1;
    }
    let gamma = constant(ConstantId::EulerGamma, work)?;
    Ok(Float::with_val(prec, sum + gamma + z.ln()))
}

fn ci_asymptotic(z: &Float, prec: u32) -> Float {
    let work = prec + 32 + z.to_f64().log2().max(0.0).ceil() as u32;
    let z = Float::with_val(work, z);
    let z_sq = Float::with_val(work, z.square_ref());
    let eps = Float::with_val(work, Float::i_exp(1, -(prec as i32) - 16));
    // z f(z) ~ sum (-1)^n (2n)! / z^(2n)
    let mut f = optimal_sum(Float::with_val(work, 1), &z_sq, |n| (2 * n - 1) * (2 * n), &eps);
    // z^2 g(z) ~ sum (-1)^n (2n+1)! / z^(2n)
    let mut g = optimal_sum(Float::with_val(work, 1), &z_sq, |n| (2 * n) * (2 * n + 1), &eps);
    f /= &z;
    g /= &z_sq;
    let (sin, cos) = z.sin_cos(Float::new(work));
    Float::with_val(prec, f * sin - g * cos)
}

/// The two slowly convergent displays.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SlowFormula {
    /// `sum_{k<=x} sqrt(k)` via FresnelS.
    SqrtFresnel,
    /// `sum_{k<=x} 1/k` via the cosine integral.
    HarmonicCosint,
}

#[derive(Debug, Clone)]
pub struct SlowSeriesRequest {
    pub formula: SlowFormula,
    pub x: Rational,
    pub outer_terms: usize,
    pub precision_bits: u32,
}

/// Rigorous bound on the omitted outer terms `k > outer_terms`.
///
/// FresnelS is bounded by 0.72, and `sum_{k>K} k^(-3/2) < 2/sqrt(K)`. For the
/// cosine integral, `Ci(z) = sin(z)/z - cos(z)/z^2 + O(z^-3)`; the sine part is
/// bounded by Abel summation and the cosine part absolutely.
pub fn slow_tail_bound(formula: SlowFormula, x: &Rational, outer_terms: usize) -> f64 {
    let k = outer_terms.max(1) as f64;
    let pi = std::f64::consts::PI;
    match formula {
        SlowFormula::SqrtFresnel => 0.72 * 2.0 / k.sqrt() / (2.0 * pi),
        SlowFormula::HarmonicCosint => {
            let x = x.to_f64();
            let sin = (pi * x).sin().abs().max(f64::MIN_POSITIVE);
            let oscillating = 1.0 / (2.0 * pi * (k + 1.0) * x * sin);
            let absolute = 1.0 / (4.0 * pi * pi * x * x * k);
            2.0 * (oscillating + absolute) * 1.01
        }
    }
}

fn slow_term(formula: SlowFormula, k: usize, x: &Float, prec: u32) -> Result<Float> {
    let kf = Float::with_val(prec, k);
    match formula {
        SlowFormula::SqrtFresnel => {
            let z = Float::with_val(prec, Float::with_val(prec, &kf * x).sqrt() * 2u32);
            let s = fresnel_s(&z, prec);
            let k32 = Float::with_val(prec, kf.sqrt_ref()) * &kf;
            let two_pi = Float::with_val(prec, Constant::Pi) * 2u32;
            Ok(-(s / k32) / two_pi)
        }
        SlowFormula::HarmonicCosint => {
            let z = Float::with_val(prec, Constant::Pi) * 2u32 * &kf * x;
            Ok(cos_integral(&z, prec)? * 2u32)
        }
    }
}

/// The display truncated after `outer_terms` outer terms.
pub fn evaluate_slow(req: &SlowSeriesRequest) -> Result<FormulaResult> {
    if req.outer_terms == 0 {
        return Err(Error::Parameter("outer_terms must be at least 1".into()));
    }
    if req.x <= 0 {
        return Err(Error::Parameter("x must be positive".into()));
    }
    if req.precision_bits < MIN_PREC {
        return Err(Error::Parameter(format!("precision must be at least {MIN_PREC} bits")));
    }
    let prec = req.precision_bits;
    let work = prec + 32;
    let x = Float::with_val(work, &req.x);
    let t = frac_rational(&req.x);
    let b1 = Float::with_val(work, bernoulli_polynomial(1).eval(&t));
    let closed = match req.formula {
        SlowFormula::SqrtFresnel => {
            let sx = Float::with_val(work, x.sqrt_ref());
            Float::with_val(work, &sx * &x) * 2u32 / 3u32 - sx * b1
        }
        SlowFormula::HarmonicCosint => {
            if *req.x.denom() == 1 {
                return Err(Error::Domain("the cosine-integral display needs non-integer x".into()));
            }
            Float::with_val(work, x.ln_ref()) + constant(ConstantId::EulerGamma, work)?
        }
    };
    let terms: Vec<Float> = (1..=req.outer_terms).map(|k| slow_term(req.formula, k, &x, work)).collect::<Result<_>>()?;
    let mut value = closed;
    let mut partial_sums = Vec::with_capacity(terms.len());
    for term in &terms {
        value += term;
        partial_sums.push(Float::with_val(prec, &value));
    }
    let next = slow_term(req.formula, req.outer_terms + 1, &x, work)?;
    Ok(FormulaResult {
        value: Float::with_val(prec, value),
        value_imag: None,
        orders_used: terms.len(),
        term_magnitudes: terms.iter().map(|t| Float::with_val(prec, t.abs_ref())).collect(),
        partial_sums,
        error_estimate: Float::with_val(prec, next.abs_ref()),
        status: Status::MaxOrderReached,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f(prec: u32, v: f64) -> Float {
        Float::with_val(prec, v)
    }

    #[test]
    fn fresnel_examples() {
        assert_eq!(fresnel_s(&f(128, 0.0), 128), 0);
        let s1 = fresnel_s(&f(128, 1.0), 128).to_f64();
        assert!((s1 - 0.438_259_147_390_354_8).abs() < 1e-15);
        assert!((fresnel_s(&f(128, 100.0), 128).to_f64() - 0.5).abs() < 0.01);
    }

    #[test]
    fn fresnel_branches_agree_near_the_switch() {
        let z = f(128, 8.5);
        let series = fresnel_series(&z, 128, std::f64::consts::PI * 8.5 * 8.5 / 2.0);
        let asymptotic = fresnel_asymptotic(&z, 128);
        assert!(Float::with_val(128, series - asymptotic).abs() < 1e-20);
    }

    #[test]
    fn ci_examples() {
        let c1 = cos_integral(&f(128, 1.0), 128).unwrap().to_f64();
        assert!((c1 - 0.337_403_922_900_968_1).abs() < 1e-15);
        assert!(cos_integral(&f(128, 1000.0), 128).unwrap().to_f64().abs() < 1e-3);
        let z = f(128, 1e-6);
        let gamma = constant(ConstantId::EulerGamma, 128).unwrap();
        let small = cos_integral(&z, 128).unwrap() - Float::with_val(128, z.ln_ref()) - gamma;
        assert!(small.abs() < 1e-12);
        assert!(matches!(cos_integral(&f(128, 0.0), 128), Err(Error::Domain(_))));
    }

    #[test]
    fn ci_branches_agree_above_the_precision_threshold() {
        let z = f(128, 120.0);
        let series = ci_series(&z, 128).unwrap();
        let asymptotic = ci_asymptotic(&z, 128);
        assert!(Float::with_val(128, series - asymptotic).abs() < 1e-30);
    }

    #[test]
    fn single_outer_term() {
        let req = SlowSeriesRequest { formula: SlowFormula::SqrtFresnel, x: Rational::from(4), outer_terms: 1, precision_bits: 128 };
        let result = evaluate_slow(&req).unwrap();
        assert_eq!(result.term_magnitudes.len(), 1);
        assert_eq!(result.orders_used, 1);
    }
}
