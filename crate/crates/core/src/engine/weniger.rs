//! Factorial-series evaluation of transformed inverse-power series.
//!
//! An inverse-power series `sum_l a_l / x^(l+1)` is re-expanded as
//! `sum_k (-1)^k N_k / D_k` with `N_k = sum_l (-1)^l S_k(l) a_l` and `D_k`
//! either `(x)_{k+1}` or `(x+1)_k`. Exact coefficient series are brought to a
//! common denominator so `N_k` is an integer dot product rounded once.
//! Floating coefficient series get a per-order guard precision sized from the
//! largest summand of the inner sum.

use std::sync::Arc;

use rug::{Float, Integer, Rational};

use crate::combinatorics::{RisingFactorial, StirlingTable};
use crate::error::{Error, Result};
use crate::real::{ComplexRational, ComplexReal};

use super::truncation::{adaptive_truncate_from, FactorialSeriesTerm, FormulaResult, TruncationPolicy};

/// Value of one coefficient `a_l`.
#[derive(Debug, Clone, PartialEq)]
pub enum Coefficient {
    Rational(Rational),
    Complex(ComplexRational),
    Real(Float),
}

/// The sequence `l -> a_l(x)` fed to the transformation.
pub trait CoefficientSeries: Send + Sync {
    /// First index `l` with a (possibly) nonzero coefficient, 0 or 1.
    fn start_index(&self) -> usize;

    /// Whether [`coefficient_at`](Self::coefficient_at) returns exact values.
    fn is_exact(&self) -> bool;

    /// `a_l`; exact series ignore `prec`.
    fn coefficient_at(&self, l: usize, prec: u32) -> Coefficient;
}

/// Series given by a closure over `l`.
pub struct FnSeries<F> {
    start: usize,
    exact: bool,
    f: F,
}

impl<F> FnSeries<F>
where
    F: Fn(usize, u32) -> Coefficient + Send + Sync,
{
    pub fn exact(start: usize, f: F) -> Self {
        Self { start, exact: true, f }
    }

    pub fn real(start: usize, f: F) -> Self {
        Self { start, exact: false, f }
    }
}

impl<F> CoefficientSeries for FnSeries<F>
where
    F: Fn(usize, u32) -> Coefficient + Send + Sync,
{
    fn start_index(&self) -> usize {
        self.start
    }

    fn is_exact(&self) -> bool {
        self.exact
    }

    fn coefficient_at(&self, l: usize, prec: u32) -> Coefficient {
        if l < self.start {
            return if self.exact {
                Coefficient::Rational(Rational::new())
            } else {
                Coefficient::Real(Float::new(prec.max(rug::float::prec_min())))
            };
        }
        (self.f)(l, prec)
    }
}

/// Which rising factorial divides order `k`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DenominatorShift {
    /// `D_k = y(y+1)...(y+k)`.
    X,
    /// `D_k = (y+1)(y+2)...(y+k)`.
    XPlusOne,
}

/// One coefficient series together with the prefactor multiplying its sum.
pub struct SeriesPart {
    pub prefactor: ComplexReal,
    pub series: Box<dyn CoefficientSeries>,
}

impl SeriesPart {
    pub fn new(prefactor: Float, series: Box<dyn CoefficientSeries>) -> Self {
        Self { prefactor: ComplexReal::from_real(prefactor), series }
    }

    pub fn complex(prefactor: ComplexReal, series: Box<dyn CoefficientSeries>) -> Self {
        Self { prefactor, series }
    }
}

/// Exact coefficients over a shared denominator, grown in blocks.
struct ExactCoefficients {
    denominator: Integer,
    re: Vec<Integer>,
    im: Vec<Integer>,
    complex: bool,
}

impl ExactCoefficients {
    fn new() -> Self {
        Self { denominator: Integer::from(1), re: Vec::new(), im: Vec::new(), complex: false }
    }

    /// Makes `len` coefficients available, growing in blocks up to `cap`.
    fn ensure(&mut self, series: &dyn CoefficientSeries, len: usize, cap: usize) {
        if self.re.len() >= len {
            return;
        }
        let target = (2 * self.re.len()).max(16).min(cap).max(len);
        let start = self.re.len();
        let mut fresh_re = Vec::with_capacity(target - start);
        let mut fresh_im = Vec::with_capacity(target - start);
        for l in start..target {
            let (re, im) = match series.coefficient_at(l, 0) {
                Coefficient::Rational(q) => (q, Rational::new()),
                Coefficient::Complex(c) => (c.re, c.im),
                Coefficient::Real(_) => unreachable!("exact series returned a float coefficient"),
            };
            if im != 0 {
                self.complex = true;
            }
            fresh_re.push(re);
            fresh_im.push(im);
        }
        let mut denominator = self.denominator.clone();
        for q in fresh_re.iter().chain(fresh_im.iter()) {
            denominator.lcm_mut(q.denom());
        }
        if denominator != self.denominator {
            let factor = Integer::from(&denominator / &self.denominator);
            for v in self.re.iter_mut().chain(self.im.iter_mut()) {
                *v *= &factor;
            }
            self.denominator = denominator;
        }
        let scale = |q: Rational| {
            let (n, d) = q.into_numer_denom();
            n * Integer::from(&self.denominator / d)
        };
        let scaled_re: Vec<Integer> = fresh_re.into_iter().map(scale).collect();
        let scaled_im: Vec<Integer> = fresh_im.into_iter().map(scale).collect();
        self.re.extend(scaled_re);
        self.im.extend(scaled_im);
    }
}

/// Floating coefficients cached at a precision that only grows.
struct RealCoefficients {
    prec: u32,
    values: Vec<Float>,
    rough: Vec<Float>,
}

impl RealCoefficients {
    const ROUGH_PREC: u32 = 64;

    fn new() -> Self {
        Self { prec: 0, values: Vec::new(), rough: Vec::new() }
    }

    fn real(c: Coefficient) -> Float {
        match c {
            Coefficient::Real(f) => f,
            Coefficient::Rational(q) => Float::with_val(Self::ROUGH_PREC.max(64), &q),
            Coefficient::Complex(_) => unreachable!("complex coefficients must be exact"),
        }
    }

    fn ensure_rough(&mut self, series: &dyn CoefficientSeries, len: usize) {
        while self.rough.len() < len {
            let l = self.rough.len();
            self.rough.push(Self::real(series.coefficient_at(l, Self::ROUGH_PREC)));
        }
    }

    fn ensure(&mut self, series: &dyn CoefficientSeries, len: usize, prec: u32) {
        if prec > self.prec {
            self.prec = prec + prec / 4 + 64;
            self.values.clear();
        }
        while self.values.len() < len {
            let l = self.values.len();
            let v = match series.coefficient_at(l, self.prec) {
                Coefficient::Rational(q) => Float::with_val(self.prec, &q),
                other => Self::real(other),
            };
            self.values.push(v);
        }
    }
}

enum PartState {
    Exact(ExactCoefficients),
    Real(RealCoefficients),
}

/// Iterator over the terms `sign (-1)^k sum_p c_p N_{p,k} / D_k`.
pub struct FactorialSeries {
    parts: Vec<SeriesPart>,
    states: Vec<PartState>,
    stirling: Arc<StirlingTable>,
    rising: RisingFactorial,
    sign: i32,
    k: usize,
    end: usize,
    prec: u32,
}

impl FactorialSeries {
    /// Terms from order `start` (the smallest start index of the parts) up to
    /// `end` inclusive. `base` is the `y` of the denominator.
    pub fn new(
        parts: Vec<SeriesPart>,
        base: &Float,
        shift: DenominatorShift,
        sign: i32,
        end: usize,
        prec: u32,
    ) -> Result<Self> {
        if parts.is_empty() {
            return Err(Error::Parameter("a factorial series needs at least one part".into()));
        }
        let stirling = StirlingTable::shared(end + 1);
        let start = parts.iter().map(|p| p.series.start_index()).min().unwrap_or(1);
        let states = parts
            .iter()
            .map(|p| {
                if p.series.is_exact() {
                    PartState::Exact(ExactCoefficients::new())
                } else {
                    PartState::Real(RealCoefficients::new())
                }
            })
            .collect();
        let first = match shift {
            DenominatorShift::X => Float::with_val(prec, base),
            DenominatorShift::XPlusOne => Float::with_val(prec, base + 1u32),
        };
        let mut rising = RisingFactorial::new(first);
        // D_k for the first order produced
        let initial = match shift {
            DenominatorShift::X => start + 1,
            DenominatorShift::XPlusOne => start,
        };
        for _ in 0..initial {
            rising.advance();
        }
        Ok(Self { parts, states, stirling, rising, sign, k: start, end, prec })
    }

    /// Largest order this stream can produce.
    pub fn capacity(&self) -> usize {
        self.end
    }

    fn inner_exact(&self, state: &ExactCoefficients, start: usize, k: usize) -> (Float, Option<Float>) {
        let row = self.stirling.row(k).expect("capacity checked at construction");
        let mut re = Integer::new();
        let mut im = Integer::new();
        for l in start..=k {
            let s = &row[l];
            if *s == 0 {
                continue;
            }
            let odd = l % 2 == 1;
            let term = Integer::from(s * &state.re[l]);
            if odd {
                re -= term;
            } else {
                re += term;
            }
            if state.complex {
                let term = Integer::from(s * &state.im[l]);
                if odd {
                    im -= term;
                } else {
                    im += term;
                }
            }
        }
        let d = Float::with_val(self.prec, &state.denominator);
        let re = Float::with_val(self.prec, &re) / &d;
        let im = state.complex.then(|| Float::with_val(self.prec, &im) / &d);
        (re, im)
    }

    fn inner_real(
        state: &mut RealCoefficients,
        series: &dyn CoefficientSeries,
        stirling: &StirlingTable,
        start: usize,
        k: usize,
        guard_reference: i64,
        prec: u32,
    ) -> Float {
        let row = stirling.row(k).expect("capacity checked at construction");
        state.ensure_rough(series, k + 1);
        let mut max_exp = i64::MIN;
        for l in start..=k {
            if row[l] == 0 || state.rough[l].is_zero() {
                continue;
            }
            let e = i64::from(row[l].significant_bits()) + i64::from(state.rough[l].get_exp().unwrap_or(0));
            max_exp = max_exp.max(e);
        }
        if max_exp == i64::MIN {
            return Float::new(prec);
        }
        let extra = (max_exp - guard_reference).max(0) as u32;
        let order_bits = usize::BITS - k.leading_zeros();
        let q = prec + extra + order_bits + 16;
        state.ensure(series, k + 1, q);
        let work = state.prec;
        let mut acc = Float::new(work);
        for l in start..=k {
            if row[l] == 0 {
                continue;
            }
            let term = Float::with_val(work, &row[l] * &state.values[l]);
            if l % 2 == 1 {
                acc -= term;
            } else {
                acc += term;
            }
        }
        Float::with_val(prec, acc)
    }
}

impl Iterator for FactorialSeries {
    type Item = FactorialSeriesTerm;

    fn next(&mut self) -> Option<FactorialSeriesTerm> {
        if self.k > self.end {
            return None;
        }
        let k = self.k;
        let prec = self.prec;
        let denominator = self.rising.value().clone();
        let denominator_exp = i64::from(denominator.get_exp().unwrap_or(0));
        let mut re = Float::new(prec);
        let mut im: Option<Float> = None;
        for idx in 0..self.parts.len() {
            let start = self.parts[idx].series.start_index();
            if k < start {
                continue;
            }
            let prefactor = self.parts[idx].prefactor.clone();
            let (n_re, n_im) = match &mut self.states[idx] {
                PartState::Exact(state) => {
                    state.ensure(self.parts[idx].series.as_ref(), k + 1, self.end + 1);
                    let state = match &self.states[idx] {
                        PartState::Exact(s) => s,
                        PartState::Real(_) => unreachable!(),
                    };
                    self.inner_exact(state, start, k)
                }
                PartState::Real(state) => {
                    let prefactor_exp = i64::from(prefactor.abs().get_exp().unwrap_or(0));
                    let reference = denominator_exp - prefactor_exp;
                    let value = Self::inner_real(
                        state,
                        self.parts[idx].series.as_ref(),
                        &self.stirling,
                        start,
                        k,
                        reference,
                        prec,
                    );
                    (value, None)
                }
            };
            let numerator = ComplexReal::new(n_re, n_im.unwrap_or_else(|| Float::new(prec)));
            let product = prefactor * numerator;
            re += &product.re;
            if !product.im.is_zero() || im.is_some() {
                let acc = im.get_or_insert_with(|| Float::new(prec));
                *acc += &product.im;
            }
        }
        let negative = (k % 2 == 1) != (self.sign < 0);
        let mut value = Float::with_val(prec, &re / &denominator);
        let mut value_imag = im.map(|v| Float::with_val(prec, v / &denominator));
        if negative {
            value = -value;
            value_imag = value_imag.map(|v| -v);
        }
        self.k += 1;
        self.rising.advance();
        Some(FactorialSeriesTerm { k, numerator: re, denominator, value, value_imag })
    }
}

/// Sums `sign * prefactor * sum_k (-1)^k N_k / D_k` per `policy`, starting
/// from `offset`.
pub fn evaluate_series(
    parts: Vec<SeriesPart>,
    base: &Float,
    shift: DenominatorShift,
    sign: i32,
    offset: ComplexReal,
    policy: &TruncationPolicy,
    prec: u32,
) -> Result<FormulaResult> {
    policy.validate()?;
    let series = FactorialSeries::new(parts, base, shift, sign, policy.capacity_needed(), prec)?;
    let imag = (!offset.im.is_zero()).then(|| offset.im.clone());
    Ok(adaptive_truncate_from(offset.re, imag, series, policy))
}

/// The transformation of a single coefficient series at `x`.
pub fn weniger_transform(
    series: Box<dyn CoefficientSeries>,
    x: &Float,
    stirling: &StirlingTable,
    policy: &TruncationPolicy,
    shift: DenominatorShift,
) -> Result<FormulaResult> {
    if *x <= 0 {
        return Err(Error::Domain("x must be positive".into()));
    }
    let needed = policy.capacity_needed();
    if needed > stirling.max_k() {
        return Err(Error::Capacity { needed, available: stirling.max_k() });
    }
    let prec = x.prec();
    let part = SeriesPart::new(Float::with_val(prec, 1), series);
    evaluate_series(vec![part], x, shift, 1, ComplexReal::zero(prec), policy, prec)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn unit(l0: usize) -> Box<dyn CoefficientSeries> {
        Box::new(FnSeries::exact(1, move |l, _| Coefficient::Rational(Rational::from(u32::from(l == l0)))))
    }

    #[test]
    fn unit_series_approaches_inverse_power_algebraically() {
        // terms of the a_2 = 1 series decay like k^-(x+1) log k
        let prec = 192;
        let stirling = StirlingTable::new(400);
        let x = Float::with_val(prec, 5);
        let target = Float::with_val(prec, 1) / 125u32;
        let mut previous = Float::with_val(prec, 1);
        for order in [50, 100, 200, 300] {
            let policy = TruncationPolicy::fixed(order);
            let result = weniger_transform(unit(2), &x, &stirling, &policy, DenominatorShift::X).unwrap();
            let diff = Float::with_val(prec, &result.value - &target).abs();
            assert!(diff < previous, "order {order}: {diff}");
            previous = diff;
        }
        assert!(previous < 1e-10, "{previous}");
    }

    #[test]
    fn zero_series_is_zero() {
        let stirling = StirlingTable::new(100);
        let zero = Box::new(FnSeries::exact(1, |_, _| Coefficient::Rational(Rational::new())));
        let x = Float::with_val(128, 3);
        let result = weniger_transform(zero, &x, &stirling, &TruncationPolicy::default(), DenominatorShift::X).unwrap();
        assert_eq!(result.value, 0);
        assert_eq!(result.orders_used, 1);
    }

    #[test]
    fn capacity_is_checked() {
        let stirling = StirlingTable::new(10);
        let x = Float::with_val(128, 3);
        let err = weniger_transform(unit(1), &x, &stirling, &TruncationPolicy::default(), DenominatorShift::X);
        assert!(matches!(err, Err(Error::Capacity { .. })));
    }

    #[test]
    fn float_and_exact_paths_agree() {
        let prec = 192;
        let stirling = StirlingTable::new(200);
        let policy = TruncationPolicy::fixed(60);
        let x = Float::with_val(prec, 7.5);
        let coeff = |l: usize| Rational::from((1, (l * l + 1) as u64));
        let exact = Box::new(FnSeries::exact(1, move |l, _| Coefficient::Rational(coeff(l))));
        let float = Box::new(FnSeries::real(1, move |l, p| Coefficient::Real(Float::with_val(p, &coeff(l)))));
        let a = weniger_transform(exact, &x, &stirling, &policy, DenominatorShift::XPlusOne).unwrap();
        let b = weniger_transform(float, &x, &stirling, &policy, DenominatorShift::XPlusOne).unwrap();
        let diff = Float::with_val(prec, &a.value - &b.value).abs();
        assert!(diff < 1e-50, "{diff}");
    }
}
