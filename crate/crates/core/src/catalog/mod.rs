//! The summation formulas, addressable as `family.vN`.
//!
//! Every Stirling-series display is described twice: structurally in
//! [`displays`] (inner-sum weights, denominator shift, sign) and numerically in
//! [`numerics`] (closed-form offset and prefactors). [`evaluate`] feeds both
//! to the factorial-series engine; [`numerator_polynomial`] reuses the
//! structural half in exact arithmetic.

mod closed;
mod displays;
mod inner;
mod numerics;

use std::fmt;
use std::str::FromStr;

use rug::{Float, Integer, Rational};
use serde::{Deserialize, Serialize};

use crate::combinatorics::PolynomialValues;
use crate::engine::{evaluate_series, Coefficient, FnSeries, FormulaResult, SeriesPart, TruncationMode, TruncationPolicy};
use crate::error::{Error, Result};
use crate::real::{floor_rational, frac_rational, ComplexRational, ComplexReal, MIN_PREC};
use crate::special::{evaluate_slow, SlowFormula, SlowSeriesRequest};

pub use inner::{
    faulhaber_inner_sum, log_family_inner_sum, log_stirling_factor, nested_log_weight, numerator_polynomial, numerator_polynomial_with_m,
    LogInnerSums,
};

/// Extra working bits on top of the requested precision.
const GUARD_BITS: u32 = 64;

/// Formula families in catalog order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Family {
    Harmonic,
    Zeta2,
    Zeta3,
    Sqrt,
    KSqrt,
    K2Sqrt,
    InvSqrt,
    #[serde(rename = "zeta_3_2")]
    Zeta32,
    #[serde(rename = "zeta_5_2")]
    Zeta52,
    FaulhaberExt,
    FaulhaberInt,
    LogFactorial,
    KLogK,
    LogkOverK,
    LogkOverK2,
    LogSquared,
    GregoryLeibniz,
    AltHarmonic,
    AltFaulhaberFinite,
    AltFaulhaberGen,
    GeometricStirling,
    AltGeometricStirling,
    GeometricEm,
    AltGeometricEm,
    ExpGeometric,
    SelfCounting,
    SqrtFresnel,
    HarmonicCosint,
}

/// How a family's right-hand side is computed.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Method {
    /// Closed form plus a factorial series.
    FactorialSeries,
    /// Closed form plus a convergent power series in `log a`.
    PowerSeries,
    /// Finite closed form.
    ClosedForm,
    /// Closed form plus a slowly convergent outer sum of special functions.
    SlowSeries,
}

impl Method {
    pub fn name(self) -> &'static str {
        match self {
            Method::FactorialSeries => "factorial_series",
            Method::PowerSeries => "power_series",
            Method::ClosedForm => "closed_form",
            Method::SlowSeries => "slow_series",
        }
    }
}

/// Extra parameters a family accepts.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Params {
    None,
    /// `m`, real or complex.
    Exponent,
    /// `m`, a non-negative integer.
    IntegerExponent,
    /// `a > 0`.
    Base,
}

struct FamilyInfo {
    family: Family,
    name: &'static str,
    variants: u8,
    summand: &'static str,
    description: &'static str,
    params: Params,
    method: Method,
    constants: &'static [&'static str],
}

const fn info(
    family: Family,
    name: &'static str,
    variants: u8,
    summand: &'static str,
    description: &'static str,
    params: Params,
    method: Method,
    constants: &'static [&'static str],
) -> FamilyInfo {
    FamilyInfo { family, name, variants, summand, description, params, method, constants }
}

use Method::{ClosedForm, FactorialSeries as Fs, PowerSeries, SlowSeries};

const FAMILIES: [FamilyInfo; 28] = [
    info(Family::Harmonic, "harmonic", 2, "1/k, k=1..floor(x)", "harmonic numbers", Params::None, Fs, &["euler_gamma"]),
    info(Family::Zeta2, "zeta2", 2, "1/k^2, k=1..floor(x)", "partial sums of zeta(2)", Params::None, Fs, &["zeta(2)"]),
    info(Family::Zeta3, "zeta3", 2, "1/k^3, k=1..floor(x)", "partial sums of zeta(3)", Params::None, Fs, &["zeta(3)"]),
    info(Family::Sqrt, "sqrt", 3, "sqrt(k), k=1..floor(x)", "sum of square roots", Params::None, Fs, &["zeta(3/2)", "pi"]),
    info(Family::KSqrt, "k_sqrt", 3, "k*sqrt(k), k=1..floor(x)", "partial sums of zeta(-3/2)", Params::None, Fs, &["zeta(5/2)", "pi"]),
    info(Family::K2Sqrt, "k2_sqrt", 3, "k^2*sqrt(k), k=1..floor(x)", "partial sums of zeta(-5/2)", Params::None, Fs, &["zeta(7/2)", "pi"]),
    info(Family::InvSqrt, "inv_sqrt", 2, "1/sqrt(k), k=1..floor(x)", "sum of inverse square roots", Params::None, Fs, &["zeta(1/2)"]),
    info(Family::Zeta32, "zeta_3_2", 2, "k^(-3/2), k=1..floor(x)", "partial sums of zeta(3/2)", Params::None, Fs, &["zeta(3/2)"]),
    info(Family::Zeta52, "zeta_5_2", 2, "k^(-5/2), k=1..floor(x)", "partial sums of zeta(5/2)", Params::None, Fs, &["zeta(5/2)"]),
    info(Family::FaulhaberExt, "faulhaber_ext", 3, "k^m, k=1..floor(x)", "power sums at real x", Params::Exponent, Fs, &["zeta(-m)"]),
    info(Family::FaulhaberInt, "faulhaber_int", 3, "k^m, k=1..n, n=floor(x)", "power sums at integer n", Params::Exponent, Fs, &["zeta(-m)"]),
    info(Family::LogFactorial, "log_factorial", 3, "log k, k=1..floor(x)", "log of floor(x)!", Params::None, Fs, &["log_two_pi"]),
    info(Family::KLogK, "k_log_k", 2, "k*log k, k=1..floor(x)", "sum of k log k", Params::None, Fs, &["zeta_prime(-1)"]),
    info(Family::LogkOverK, "logk_over_k", 1, "log(k)/k, k=1..floor(x)", "sum of log(k)/k", Params::None, Fs, &["stieltjes_1"]),
    info(Family::LogkOverK2, "logk_over_k2", 1, "log(k)/k^2, k=1..floor(x)", "sum of log(k)/k^2", Params::None, Fs, &["zeta_prime(2)"]),
    info(
        Family::LogSquared,
        "log_squared",
        1,
        "log(k)^2, k=1..floor(x)",
        "sum of squared logarithms",
        Params::None,
        Fs,
        &["euler_gamma", "stieltjes_1", "pi", "log_two"],
    ),
    info(Family::GregoryLeibniz, "gregory_leibniz", 2, "(-1)^k/(2k+1), k=0..floor(x)", "partial sums of pi/4", Params::None, Fs, &["pi"]),
    info(Family::AltHarmonic, "alt_harmonic", 2, "(-1)^(k+1)/k, k=1..floor(x)", "alternating harmonic numbers", Params::None, Fs, &["log_two"]),
    info(
        Family::AltFaulhaberFinite,
        "alt_faulhaber_finite",
        2,
        "(-1)^(k+1) k^m, k=1..floor(x)",
        "alternating power sums, integer m",
        Params::IntegerExponent,
        ClosedForm,
        &["eta(-m)"],
    ),
    info(
        Family::AltFaulhaberGen,
        "alt_faulhaber_gen",
        2,
        "(-1)^(k+1) k^m, k=1..floor(x)",
        "alternating power sums, general m",
        Params::Exponent,
        Fs,
        &["eta(-m)"],
    ),
    info(Family::GeometricStirling, "geometric_stirling", 2, "a^k, k=0..floor(x)", "geometric sums", Params::Base, Fs, &[]),
    info(
        Family::AltGeometricStirling,
        "alt_geometric_stirling",
        2,
        "(-a)^k, k=0..floor(x)",
        "alternating geometric sums",
        Params::Base,
        Fs,
        &[],
    ),
    info(Family::GeometricEm, "geometric_em", 1, "a^k, k=0..floor(x)", "geometric sums, Bernoulli power series", Params::Base, PowerSeries, &[]),
    info(
        Family::AltGeometricEm,
        "alt_geometric_em",
        1,
        "(-a)^k, k=0..floor(x)",
        "alternating geometric sums, Bernoulli power series",
        Params::Base,
        PowerSeries,
        &[],
    ),
    info(Family::ExpGeometric, "exp_geometric", 1, "e^k, k=0..floor(x)", "sums of powers of e", Params::None, PowerSeries, &[]),
    info(
        Family::SelfCounting,
        "self_counting",
        1,
        "floor(1/2 + sqrt(2k)), k=1..floor(x)",
        "partial sums of 1, 2, 2, 3, 3, 3, ...",
        Params::None,
        ClosedForm,
        &[],
    ),
    info(Family::SqrtFresnel, "sqrt_fresnel", 1, "sqrt(k), k=1..floor(x)", "sum of square roots via FresnelS", Params::None, SlowSeries, &["pi"]),
    info(
        Family::HarmonicCosint,
        "harmonic_cosint",
        1,
        "1/k, k=1..floor(x)",
        "harmonic numbers via the cosine integral",
        Params::None,
        SlowSeries,
        &["euler_gamma", "pi"],
    ),
];

impl Family {
    fn info(self) -> &'static FamilyInfo {
        FAMILIES.iter().find(|i| i.family == self).expect("every family has metadata")
    }

    /// All families in catalog order.
    pub fn all() -> impl Iterator<Item = Family> {
        FAMILIES.iter().map(|i| i.family)
    }

    pub fn name(self) -> &'static str {
        self.info().name
    }

    /// Number of displayed variants.
    pub fn variants(self) -> u8 {
        self.info().variants
    }

    pub fn method(self) -> Method {
        self.info().method
    }

    /// Whether the family accepts `m`.
    pub fn takes_exponent(self) -> bool {
        matches!(self.info().params, Params::Exponent | Params::IntegerExponent)
    }

    /// Whether the family accepts `a`.
    pub fn takes_base(self) -> bool {
        matches!(self.info().params, Params::Base)
    }

    /// Whether the left-hand side alternates in sign, so the sum jumps by
    /// `±f(n+1)` when `x` crosses an integer.
    pub fn is_alternating(self) -> bool {
        matches!(
            self,
            Family::GregoryLeibniz
                | Family::AltHarmonic
                | Family::AltFaulhaberFinite
                | Family::AltFaulhaberGen
                | Family::AltGeometricStirling
                | Family::AltGeometricEm
        )
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        FAMILIES
            .iter()
            .find(|i| i.name == s)
            .map(|i| i.family)
            .ok_or_else(|| Error::UnknownFormula(s.to_string()))
    }
}

/// A single display: family plus 1-based variant.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "String", into = "String")]
pub struct FormulaId {
    pub family: Family,
    pub variant: u8,
}

impl FormulaId {
    pub fn new(family: Family, variant: u8) -> Result<Self> {
        if variant == 0 || variant > family.variants() {
            return Err(Error::UnknownFormula(format!("{}.v{variant}", family.name())));
        }
        Ok(Self { family, variant })
    }

    /// Every display in catalog order.
    pub fn all() -> Vec<FormulaId> {
        Family::all().flat_map(|f| (1..=f.variants()).map(move |v| FormulaId { family: f, variant: v })).collect()
    }
}

impl fmt::Display for FormulaId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}.v{}", self.family.name(), self.variant)
    }
}

impl FromStr for FormulaId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let unknown = || Error::UnknownFormula(s.to_string());
        let (family, variant) = s.trim().rsplit_once(".v").ok_or_else(unknown)?;
        let family: Family = family.parse().map_err(|_| unknown())?;
        let variant: u8 = variant.parse().map_err(|_| unknown())?;
        Self::new(family, variant).map_err(|_| unknown())
    }
}

impl TryFrom<String> for FormulaId {
    type Error = Error;

    fn try_from(s: String) -> Result<Self> {
        s.parse()
    }
}

impl From<FormulaId> for String {
    fn from(id: FormulaId) -> String {
        id.to_string()
    }
}

/// One evaluation of a display at `x`.
#[derive(Debug, Clone)]
pub struct EvalRequest {
    pub formula: FormulaId,
    pub x: Rational,
    /// Exponent for the power-sum families.
    pub m: Option<ComplexRational>,
    /// Base for the geometric families.
    pub a: Option<Rational>,
    pub precision_bits: u32,
    pub policy: TruncationPolicy,
}

impl EvalRequest {
    /// 192-bit request with the default adaptive policy.
    pub fn new(formula: FormulaId, x: Rational) -> Self {
        Self { formula, x, m: None, a: None, precision_bits: 192, policy: TruncationPolicy::default() }
    }

    pub fn with_m(mut self, m: ComplexRational) -> Self {
        self.m = Some(m);
        self
    }

    pub fn with_real_m(self, m: Rational) -> Self {
        self.with_m(ComplexRational::real(m))
    }

    pub fn with_a(mut self, a: Rational) -> Self {
        self.a = Some(a);
        self
    }

    pub fn with_precision(mut self, bits: u32) -> Self {
        self.precision_bits = bits;
        self
    }

    pub fn with_policy(mut self, policy: TruncationPolicy) -> Self {
        self.policy = policy;
        self
    }

    /// Fills in [`default_parameters`] for any missing `m` or `a`.
    pub fn with_default_parameters(mut self) -> Self {
        let (m, a) = default_parameters(self.formula.family);
        if self.m.is_none() {
            self.m = m;
        }
        if self.a.is_none() {
            self.a = a;
        }
        self
    }
}

/// Parameter values used when a sweep does not specify them.
pub fn default_parameters(family: Family) -> (Option<ComplexRational>, Option<Rational>) {
    match family.info().params {
        Params::Exponent => (Some(ComplexRational::real(Rational::from((1, 2)))), None),
        Params::IntegerExponent => (Some(ComplexRational::real(Rational::from(3))), None),
        Params::Base => (None, Some(Rational::from((1, 2)))),
        Params::None => (None, None),
    }
}

/// One parameter of a family, for the machine-readable listing.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ParameterSpec {
    pub name: &'static str,
    pub domain: &'static str,
    pub required: bool,
}

/// Catalog entry returned by [`list_formulas`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FormulaInfo {
    pub id: FormulaId,
    pub summand: &'static str,
    pub description: &'static str,
    pub method: Method,
    pub parameters: Vec<ParameterSpec>,
    pub constants: Vec<&'static str>,
}

fn parameter_specs(family: Family, variant: u8) -> Vec<ParameterSpec> {
    let x = ParameterSpec { name: "x", domain: "real, x > 0", required: true };
    let extra = match family.info().params {
        Params::None => None,
        Params::Exponent if family == Family::FaulhaberExt || family == Family::FaulhaberInt => Some(if variant == 3 {
            ParameterSpec { name: "m", domain: "real, m > -1", required: true }
        } else {
            ParameterSpec { name: "m", domain: "complex, m != -1", required: true }
        }),
        Params::Exponent => Some(ParameterSpec { name: "m", domain: "complex, m != -1", required: true }),
        Params::IntegerExponent => Some(ParameterSpec { name: "m", domain: "integer, m >= 0", required: true }),
        Params::Base => Some(match family {
            Family::GeometricStirling => ParameterSpec { name: "a", domain: "real, a > 0, a != 1", required: true },
            Family::AltGeometricStirling => ParameterSpec { name: "a", domain: "real, a > 0", required: true },
            _ => ParameterSpec { name: "a", domain: "real, exp(-2 pi) < a < exp(2 pi), a != 1", required: true },
        }),
    };
    std::iter::once(x).chain(extra).collect()
}

/// The complete catalog in stable order.
pub fn list_formulas() -> Vec<FormulaInfo> {
    FormulaId::all()
        .into_iter()
        .map(|id| {
            let info = id.family.info();
            FormulaInfo {
                id,
                summand: info.summand,
                description: info.description,
                method: info.method,
                parameters: parameter_specs(id.family, id.variant),
                constants: info.constants.to_vec(),
            }
        })
        .collect()
}

/// Checks the request against the family's parameter domain.
pub fn validate(req: &EvalRequest) -> Result<()> {
    let family = req.formula.family;
    if req.x <= 0 {
        return Err(Error::Parameter("x must be positive".into()));
    }
    if req.precision_bits < MIN_PREC {
        return Err(Error::Parameter(format!("precision must be at least {MIN_PREC} bits")));
    }
    req.policy.validate()?;
    if family.takes_exponent() {
        let m = req.m.as_ref().ok_or_else(|| Error::Parameter(format!("{family} requires m")))?;
        if m.is_real() && m.re == -1 {
            return Err(Error::Parameter("m must not equal -1".into()));
        }
        let real_only = family.info().params == Params::IntegerExponent
            || (matches!(family, Family::FaulhaberExt | Family::FaulhaberInt) && req.formula.variant == 3);
        if real_only && !m.is_real() {
            return Err(Error::Parameter(format!("{} requires a real m", req.formula)));
        }
        if family.info().params == Params::IntegerExponent && (*m.re.denom() != 1 || m.re < 0) {
            return Err(Error::Parameter("m must be a non-negative integer".into()));
        }
        if matches!(family, Family::FaulhaberExt | Family::FaulhaberInt) && req.formula.variant == 3 && m.re <= -1 {
            return Err(Error::Parameter("m must exceed -1 for this variant".into()));
        }
    } else if req.m.is_some() {
        return Err(Error::Parameter(format!("{family} does not take m")));
    }
    if family.takes_base() {
        let a = req.a.as_ref().ok_or_else(|| Error::Parameter(format!("{family} requires a")))?;
        if *a == 1 && family != Family::AltGeometricStirling {
            return Err(Error::Parameter("a must not equal 1".into()));
        }
        if *a == -1 {
            return Err(Error::Parameter("a must not equal -1".into()));
        }
        if *a <= 0 {
            return Err(Error::Parameter("a must be positive".into()));
        }
        if matches!(family, Family::GeometricEm | Family::AltGeometricEm) {
            let log_a = Float::with_val(64, a).ln().to_f64();
            if log_a.abs() >= 2.0 * std::f64::consts::PI {
                return Err(Error::Parameter("a must lie in (exp(-2 pi), exp(2 pi))".into()));
            }
        }
    } else if req.a.is_some() {
        return Err(Error::Parameter(format!("{family} does not take a")));
    }
    let uses_integer_limit = matches!(
        (family, req.formula.variant),
        (Family::FaulhaberInt, _)
            | (Family::GregoryLeibniz, 2)
            | (Family::AltHarmonic, 2)
            | (Family::AltFaulhaberGen, 2)
            | (Family::GeometricStirling, 2)
            | (Family::AltGeometricStirling, 2)
    );
    if uses_integer_limit && req.x < 1 {
        return Err(Error::Domain(format!("{} needs floor(x) >= 1", req.formula)));
    }
    if family == Family::HarmonicCosint && *req.x.denom() == 1 {
        return Err(Error::Domain("harmonic_cosint needs non-integer x".into()));
    }
    Ok(())
}

/// Evaluation context shared by the display builders.
pub(crate) struct Ctx {
    /// The display's argument: `x`, or `floor(x)` for integer-limit variants.
    pub x: Rational,
    /// `{x}`, or 0 for integer-limit variants.
    pub t: Rational,
    pub n: Integer,
    pub prec: u32,
    pub m: Option<ComplexRational>,
    pub a: Option<Rational>,
}

impl Ctx {
    fn new(req: &EvalRequest, integer_limit: bool) -> Self {
        let n = floor_rational(&req.x);
        let (x, t) = if integer_limit {
            (Rational::from(n.clone()), Rational::new())
        } else {
            (req.x.clone(), frac_rational(&req.x))
        };
        Self { x, t, n, prec: req.precision_bits + GUARD_BITS, m: req.m.clone(), a: req.a.clone() }
    }
}

/// Evaluates the right-hand side of `req.formula` at `req.x`.
pub fn evaluate(req: &EvalRequest) -> Result<FormulaResult> {
    validate(req)?;
    let family = req.formula.family;
    let result = match family.method() {
        Method::SlowSeries => {
            let formula = match family {
                Family::SqrtFresnel => SlowFormula::SqrtFresnel,
                _ => SlowFormula::HarmonicCosint,
            };
            let outer_terms = match req.policy.mode {
                TruncationMode::Fixed(k) => k,
                TruncationMode::Adaptive => req.policy.max_order,
            };
            let slow = SlowSeriesRequest { formula, x: req.x.clone(), outer_terms, precision_bits: req.precision_bits };
            return evaluate_slow(&slow);
        }
        Method::ClosedForm => {
            let ctx = Ctx::new(req, req.formula.variant == 2);
            closed::evaluate(req.formula, &ctx)?
        }
        Method::PowerSeries => {
            let ctx = Ctx::new(req, false);
            closed::evaluate_power_series(req.formula, &ctx, &req.policy)?
        }
        Method::FactorialSeries => {
            let shape = displays::shape(req.formula, req.m.as_ref())?;
            let ctx = Ctx::new(req, shape.integer_limit);
            evaluate_stirling(&shape, &ctx, &req.policy)?
        }
    };
    Ok(round_result(result, req.precision_bits))
}

fn evaluate_stirling(shape: &displays::Shape, ctx: &Ctx, policy: &TruncationPolicy) -> Result<FormulaResult> {
    let num = numerics::numerics(shape.formula, ctx)?;
    debug_assert_eq!(num.prefactors.len(), shape.inners.len());
    let capacity = policy.capacity_needed() + 1;
    let parts = shape
        .inners
        .iter()
        .zip(num.prefactors)
        .map(|(inner, prefactor)| SeriesPart::complex(prefactor, coefficient_series(inner, ctx, capacity)))
        .collect();
    evaluate_series(parts, &num.base, shape.shift, shape.sign, num.offset, policy, ctx.prec)
}

fn coefficient_series(inner: &displays::Inner, ctx: &Ctx, capacity: usize) -> Box<dyn crate::engine::CoefficientSeries> {
    let values = PolynomialValues::cached(inner.kind, &ctx.t, capacity + inner.index_shift + 1);
    let weight = inner.weight.clone();
    let shift = inner.index_shift;
    match &inner.geometric {
        None => Box::new(FnSeries::exact(inner.start, move |l, _| {
            let w = weight(l);
            let p = values.get(l + shift);
            Coefficient::Complex(ComplexRational::new(Rational::from(&w.re * p), Rational::from(&w.im * p)))
        })),
        Some(log_offset) => {
            let log_offset = *log_offset;
            let a = ctx.a.clone().expect("validated");
            let y = ctx.x.clone();
            Box::new(FnSeries::real(inner.start, move |l, prec| {
                let w = weight(l);
                let power = rug::ops::Pow::pow(Rational::from(&y), l as u32);
                let exact = Rational::from(&w.re * values.get(l + shift)) * power;
                let log_a = Float::with_val(prec, &a).ln();
                let log_power = Float::with_val(prec, rug::ops::Pow::pow(&log_a, l as i32 + log_offset));
                Coefficient::Real(Float::with_val(prec, &exact) * log_power)
            }))
        }
    }
}

fn round_result(mut result: FormulaResult, prec: u32) -> FormulaResult {
    result.value = Float::with_val(prec, &result.value);
    result.value_imag = result.value_imag.map(|v| Float::with_val(prec, v));
    result.error_estimate = Float::with_val(prec, &result.error_estimate);
    for m in result.term_magnitudes.iter_mut().chain(result.partial_sums.iter_mut()) {
        *m = Float::with_val(prec, &*m);
    }
    result
}

/// `(-1)^n` as a float.
pub(crate) fn parity(n: &Integer, prec: u32) -> Float {
    Float::with_val(prec, crate::real::parity_sign(n))
}

/// Wraps a real value as complex.
pub(crate) fn cr(value: Float) -> ComplexReal {
    ComplexReal::from_real(value)
}
