//! Ground truth by literal summation of each family's left-hand side, and
//! convergence studies of catalog formulas against it.
//!
//! Nothing here goes through [`crate::engine`].

use rug::ops::Pow;
use rug::{Float, Integer, Rational};

use crate::catalog::{evaluate, EvalRequest, Family, FormulaId};
use crate::engine::TruncationPolicy;
use crate::error::{Error, Result};
use crate::real::{floor_rational, ComplexRational, ComplexReal};

/// Extra bits carried by floating brute-force sums.
pub const ORACLE_PADDING_BITS: u32 = 32;

/// Parameters of a left-hand side.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct SumParameters {
    pub m: Option<ComplexRational>,
    pub a: Option<Rational>,
}

impl SumParameters {
    pub fn of(req: &EvalRequest) -> Self {
        Self { m: req.m.clone(), a: req.a.clone() }
    }
}

/// A brute-force sum.
#[derive(Debug, Clone)]
pub struct OracleValue {
    pub value: Float,
    pub value_imag: Option<Float>,
    /// The exact sum, when every summand is rational.
    pub exact: Option<Rational>,
    /// Number of summands added.
    pub terms: u64,
}

/// Kahan-compensated running sum.
struct Compensated {
    sum: Float,
    carry: Float,
}

impl Compensated {
    fn new(prec: u32) -> Self {
        Self { sum: Float::new(prec), carry: Float::new(prec) }
    }

    fn add(&mut self, term: &Float) {
        let prec = self.sum.prec();
        let y = Float::with_val(prec, term - &self.carry);
        let t = Float::with_val(prec, &self.sum + &y);
        let lost = Float::with_val(prec, &t - &self.sum);
        self.carry = lost - y;
        self.sum = t;
    }
}

fn alternating_sign(k: u64, first_positive_at_odd: bool) -> i32 {
    if (k % 2 == 1) == first_positive_at_odd {
        1
    } else {
        -1
    }
}

/// `floor(1/2 + sqrt(2k))`, the k-th entry of 1, 2, 2, 3, 3, 3, ...
pub fn self_counting_term(k: u64) -> u64 {
    let root = Integer::from(8 * k).sqrt();
    ((root + 1u32) / 2u32).to_u64().expect("small")
}

fn integer_exponent(m: &ComplexRational) -> Option<i32> {
    if m.is_real() && *m.re.denom() == 1 {
        m.re.numer().to_i32()
    } else {
        None
    }
}

fn require_m(family: Family, params: &SumParameters) -> Result<ComplexRational> {
    params.m.clone().ok_or_else(|| Error::Parameter(format!("{} needs m", family.name())))
}

fn require_a(family: Family, params: &SumParameters) -> Result<Rational> {
    params.a.clone().ok_or_else(|| Error::Parameter(format!("{} needs a", family.name())))
}

fn exact_sum(first: u64, last: u64, term: impl Fn(u64) -> Rational, prec: u32) -> OracleValue {
    let mut acc = Rational::new();
    for k in first..=last {
        acc += term(k);
    }
    OracleValue {
        value: Float::with_val(prec, &acc),
        value_imag: None,
        exact: Some(acc),
        terms: (last + 1).saturating_sub(first),
    }
}

fn float_sum(first: u64, last: u64, term: impl Fn(u64, u32) -> Float, prec: u32) -> OracleValue {
    let work = prec + ORACLE_PADDING_BITS;
    let mut acc = Compensated::new(work);
    for k in first..=last {
        acc.add(&term(k, work));
    }
    OracleValue {
        value: Float::with_val(prec, &acc.sum),
        value_imag: None,
        exact: None,
        terms: (last + 1).saturating_sub(first),
    }
}

fn complex_sum(first: u64, last: u64, term: impl Fn(u64, u32) -> ComplexReal, prec: u32) -> OracleValue {
    let work = prec + ORACLE_PADDING_BITS;
    let mut re = Compensated::new(work);
    let mut im = Compensated::new(work);
    for k in first..=last {
        let z = term(k, work);
        re.add(&z.re);
        im.add(&z.im);
    }
    OracleValue {
        value: Float::with_val(prec, &re.sum),
        value_imag: Some(Float::with_val(prec, &im.sum)),
        exact: None,
        terms: (last + 1).saturating_sub(first),
    }
}

/// `k^(j/2)`.
fn half_power(k: u64, j: i32, prec: u32) -> Float {
    Float::with_val(prec, k).sqrt().pow(j)
}

/// `k^m` summed with the given sign pattern.
fn power_sum(last: u64, m: &ComplexRational, alternating: bool, prec: u32) -> OracleValue {
    let sign = move |k: u64| if alternating { alternating_sign(k, true) } else { 1 };
    if let Some(e) = integer_exponent(m) {
        return exact_sum(
            1,
            last,
            |k| {
                let p = Rational::from(k).pow(e);
                if sign(k) < 0 {
                    -p
                } else {
                    p
                }
            },
            prec,
        );
    }
    if m.is_real() {
        let e = m.re.clone();
        return float_sum(1, last, |k, p| Float::with_val(p, k).pow(Float::with_val(p, &e)) * sign(k), prec);
    }
    complex_sum(
        1,
        last,
        |k, p| {
            let z = ComplexReal::real_base_pow(&Float::with_val(p, k), &m.to_complex_real(p));
            let s = Float::with_val(p, sign(k));
            z.scale(&s)
        },
        prec,
    )
}

/// Literal sum of the left-hand side of `family` up to `floor(x)`.
pub fn brute_force(family: Family, x: &Rational, params: &SumParameters, precision_bits: u32) -> Result<OracleValue> {
    let n = floor_rational(x);
    if n < 0 {
        return Err(Error::Parameter("x must be positive".into()));
    }
    let n = n.to_u64().ok_or_else(|| Error::Parameter("x is too large for direct summation".into()))?;
    let prec = precision_bits;
    let value = match family {
        Family::Harmonic | Family::HarmonicCosint => exact_sum(1, n, |k| Rational::from((1, k)), prec),
        Family::Zeta2 => exact_sum(1, n, |k| Rational::from((1, k * k)), prec),
        Family::Zeta3 => exact_sum(1, n, |k| Rational::from((1, Integer::from(k).pow(3))), prec),
        Family::Sqrt | Family::SqrtFresnel => float_sum(1, n, |k, p| half_power(k, 1, p), prec),
        Family::KSqrt => float_sum(1, n, |k, p| half_power(k, 3, p), prec),
        Family::K2Sqrt => float_sum(1, n, |k, p| half_power(k, 5, p), prec),
        Family::InvSqrt => float_sum(1, n, |k, p| half_power(k, -1, p), prec),
        Family::Zeta32 => float_sum(1, n, |k, p| half_power(k, -3, p), prec),
        Family::Zeta52 => float_sum(1, n, |k, p| half_power(k, -5, p), prec),
        Family::FaulhaberExt | Family::FaulhaberInt => power_sum(n, &require_m(family, params)?, false, prec),
        Family::AltFaulhaberFinite | Family::AltFaulhaberGen => power_sum(n, &require_m(family, params)?, true, prec),
        Family::LogFactorial => float_sum(1, n, |k, p| Float::with_val(p, k).ln(), prec),
        Family::KLogK => float_sum(1, n, |k, p| Float::with_val(p, k).ln() * k, prec),
        Family::LogkOverK => float_sum(1, n, |k, p| Float::with_val(p, k).ln() / k, prec),
        Family::LogkOverK2 => float_sum(1, n, |k, p| Float::with_val(p, k).ln() / (k * k), prec),
        Family::LogSquared => float_sum(1, n, |k, p| Float::with_val(p, k).ln().square(), prec),
        Family::GregoryLeibniz => exact_sum(0, n, |k| Rational::from((alternating_sign(k, false), 2 * k + 1)), prec),
        Family::AltHarmonic => exact_sum(1, n, |k| Rational::from((alternating_sign(k, true), k)), prec),
        Family::GeometricStirling | Family::GeometricEm => {
            let a = require_a(family, params)?;
            exact_sum(0, n, |k| Rational::from(&a).pow(k as u32), prec)
        }
        Family::AltGeometricStirling | Family::AltGeometricEm => {
            let a = -require_a(family, params)?;
            exact_sum(0, n, |k| Rational::from(&a).pow(k as u32), prec)
        }
        Family::ExpGeometric => float_sum(0, n, |k, p| Float::with_val(p, k).exp(), prec),
        Family::SelfCounting => exact_sum(1, n, |k| Rational::from(self_counting_term(k)), prec),
    };
    Ok(value)
}

/// [`brute_force`] for the left-hand side of `req`.
pub fn brute_force_request(req: &EvalRequest) -> Result<OracleValue> {
    brute_force(req.formula.family, &req.x, &SumParameters::of(req), req.precision_bits)
}

/// One truncation order of a convergence study.
#[derive(Debug, Clone)]
pub struct ConvergenceRow {
    pub order: usize,
    pub partial_value: Float,
    pub abs_error: Float,
    pub term_magnitude: Float,
}

#[derive(Debug, Clone)]
pub struct ConvergenceReport {
    pub formula: FormulaId,
    pub x: Rational,
    pub rows: Vec<ConvergenceRow>,
    pub oracle_value: Float,
    /// Summands added by the oracle.
    pub oracle_cost: u64,
}

/// Partial values of `req.formula` at orders `1..=max_order` against the
/// brute-force sum. The request's truncation policy is ignored.
pub fn convergence_study(req: &EvalRequest, max_order: usize) -> Result<ConvergenceReport> {
    if max_order == 0 {
        return Err(Error::Parameter("max_order must be at least 1".into()));
    }
    let fixed = EvalRequest { policy: TruncationPolicy::fixed(max_order), ..req.clone() };
    let oracle = brute_force_request(&fixed)?;
    let result = evaluate(&fixed)?;
    let prec = req.precision_bits;
    let rows = if result.partial_sums.is_empty() {
        // Closed forms have no truncation orders; every row is the value.
        let zero = Float::new(prec);
        (1..=max_order)
            .map(|order| ConvergenceRow {
                order,
                partial_value: result.value.clone(),
                abs_error: Float::with_val(prec, &result.value - &oracle.value).abs(),
                term_magnitude: zero.clone(),
            })
            .collect()
    } else {
        result
            .partial_sums
            .iter()
            .zip(&result.term_magnitudes)
            .enumerate()
            .map(|(i, (partial, magnitude))| ConvergenceRow {
                order: i + 1,
                partial_value: partial.clone(),
                abs_error: Float::with_val(prec, partial - &oracle.value).abs(),
                term_magnitude: magnitude.clone(),
            })
            .collect()
    };
    Ok(ConvergenceReport { formula: req.formula, x: req.x.clone(), rows, oracle_value: oracle.value, oracle_cost: oracle.terms })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(text: &str) -> Rational {
        crate::real::parse_rational(text).unwrap()
    }

    #[test]
    fn harmonic_is_exact() {
        let v = brute_force(Family::Harmonic, &q("10.5"), &SumParameters::default(), 128).unwrap();
        assert_eq!(v.exact, Some(Rational::from((7381, 2520))));
        assert_eq!(v.terms, 10);
    }

    #[test]
    fn self_counting_sequence() {
        let first: Vec<u64> = (1..=10).map(self_counting_term).collect();
        assert_eq!(first, vec![1, 2, 2, 3, 3, 3, 4, 4, 4, 4]);
        let v = brute_force(Family::SelfCounting, &q("10"), &SumParameters::default(), 64).unwrap();
        assert_eq!(v.exact, Some(Rational::from(30)));
    }

    #[test]
    fn zeta2_three_terms() {
        let v = brute_force(Family::Zeta2, &q("3.9"), &SumParameters::default(), 64).unwrap();
        assert_eq!(v.exact, Some(Rational::from((49, 36))));
    }

    #[test]
    fn geometric_sum_is_closed_form() {
        let params = SumParameters { m: None, a: Some(Rational::from((1, 2))) };
        let v = brute_force(Family::GeometricStirling, &q("6"), &params, 64).unwrap();
        assert_eq!(v.exact, Some(Rational::from((127, 64))));
        let v = brute_force(Family::AltGeometricStirling, &q("2"), &params, 64).unwrap();
        assert_eq!(v.exact, Some(Rational::from((3, 4))));
    }

    #[test]
    fn alternating_families() {
        let none = SumParameters::default();
        let v = brute_force(Family::GregoryLeibniz, &q("2"), &none, 64).unwrap();
        assert_eq!(v.exact, Some(Rational::from((13, 15))));
        let v = brute_force(Family::AltHarmonic, &q("3"), &none, 64).unwrap();
        assert_eq!(v.exact, Some(Rational::from((5, 6))));
        let params = SumParameters { m: Some(ComplexRational::real(Rational::from(1))), a: None };
        let v = brute_force(Family::AltFaulhaberFinite, &q("5"), &params, 64).unwrap();
        assert_eq!(v.exact, Some(Rational::from(3)));
    }

    #[test]
    fn float_sums_agree_with_padding() {
        let v = brute_force(Family::Sqrt, &q("4"), &SumParameters::default(), 128).unwrap();
        let expected = Float::with_val(160, 2).sqrt() + Float::with_val(160, 3).sqrt() + 3u32;
        assert!(Float::with_val(128, &v.value - &expected).abs() < 1e-36);
        let coarse = brute_force(Family::LogSquared, &q("300"), &SumParameters::default(), 100).unwrap();
        let fine = brute_force(Family::LogSquared, &q("300"), &SumParameters::default(), 200).unwrap();
        assert!(Float::with_val(200, &coarse.value - &fine.value).abs() < 1e-26);
    }

    #[test]
    fn complex_exponent_sum() {
        let params = SumParameters { m: Some(ComplexRational::new(Rational::from(0), Rational::from(1))), a: None };
        let v = brute_force(Family::FaulhaberExt, &q("2"), &params, 64).unwrap();
        // 1 + 2^i
        let ln2 = 2f64.ln();
        assert!((v.value.to_f64() - (1.0 + ln2.cos())).abs() < 1e-15);
        assert!((v.value_imag.unwrap().to_f64() - ln2.sin()).abs() < 1e-15);
    }

    #[test]
    fn missing_parameters_are_reported() {
        assert!(brute_force(Family::GeometricEm, &q("3"), &SumParameters::default(), 64).is_err());
        assert!(brute_force(Family::FaulhaberExt, &q("3"), &SumParameters::default(), 64).is_err());
    }

    #[test]
    fn study_rows() {
        let id: FormulaId = "harmonic.v2".parse().unwrap();
        let req = EvalRequest::new(id, q("10.5"));
        let report = convergence_study(&req, 20).unwrap();
        assert_eq!(report.rows.len(), 20);
        assert_eq!(report.oracle_cost, 10);
        let error = |k: usize| report.rows[k - 1].abs_error.to_f64();
        assert!(error(20) < 1e-9);
        for k in 6..20 {
            assert!(error(k + 1) < error(k), "k = {k}");
        }
        let one = convergence_study(&req, 1).unwrap();
        assert_eq!(one.rows.len(), 1);
    }
}
