use rug::Float;
use serde::{Deserialize, Serialize};

/// How many terms of a factorial series to take.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum TruncationMode {
    /// Exactly `K` terms.
    Fixed(usize),
    /// Stop on the tolerance test, the divergence guard or `max_order`.
    Adaptive,
}

#[derive(Debug, Clone, PartialEq)]
pub struct TruncationPolicy {
    pub mode: TruncationMode,
    pub tolerance: f64,
    pub max_order: usize,
    /// Consecutive strictly growing term magnitudes tolerated before stopping.
    pub divergence_guard: usize,
}

impl Default for TruncationPolicy {
    fn default() -> Self {
        Self { mode: TruncationMode::Adaptive, tolerance: 1e-30, max_order: 64, divergence_guard: 3 }
    }
}

impl TruncationPolicy {
    pub fn adaptive(tolerance: f64, max_order: usize) -> Self {
        Self { tolerance, max_order, ..Self::default() }
    }

    pub fn fixed(order: usize) -> Self {
        Self { mode: TruncationMode::Fixed(order), max_order: order.max(1), ..Self::default() }
    }

    /// Highest order a stream must be able to produce, lookahead included.
    pub fn capacity_needed(&self) -> usize {
        match self.mode {
            TruncationMode::Fixed(k) => k.max(self.max_order) + 1,
            TruncationMode::Adaptive => self.max_order + 1,
        }
    }

    pub fn validate(&self) -> crate::Result<()> {
        if self.max_order < 1 {
            return Err(crate::Error::Parameter("max_order must be at least 1".into()));
        }
        if matches!(self.mode, TruncationMode::Adaptive) && !(self.tolerance > 0.0) {
            return Err(crate::Error::Parameter("tolerance must be positive".into()));
        }
        Ok(())
    }
}

/// Why a series evaluation stopped.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Converged,
    MaxOrderReached,
    DivergenceGuardTripped,
}

impl Status {
    pub fn as_str(self) -> &'static str {
        match self {
            Status::Converged => "converged",
            Status::MaxOrderReached => "max_order_reached",
            Status::DivergenceGuardTripped => "divergence_guard_tripped",
        }
    }
}

impl std::fmt::Display for Status {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.as_str())
    }
}

/// One order of a factorial series: `value = (-1)^k numerator / denominator`
/// up to the display's fixed sign and prefactor.
#[derive(Debug, Clone)]
pub struct FactorialSeriesTerm {
    pub k: usize,
    pub numerator: Float,
    pub denominator: Float,
    pub value: Float,
    pub value_imag: Option<Float>,
}

impl FactorialSeriesTerm {
    pub fn real(k: usize, value: Float) -> Self {
        let prec = value.prec();
        Self { k, numerator: value.clone(), denominator: Float::with_val(prec, 1), value, value_imag: None }
    }

    pub fn magnitude(&self) -> Float {
        match &self.value_imag {
            None => Float::with_val(self.value.prec(), self.value.abs_ref()),
            Some(im) => Float::with_val(self.value.prec(), self.value.hypot_ref(im)),
        }
    }
}

/// Evaluation receipt.
#[derive(Debug, Clone)]
pub struct FormulaResult {
    pub value: Float,
    /// Imaginary part, present for complex-parameter evaluations.
    pub value_imag: Option<Float>,
    pub orders_used: usize,
    pub term_magnitudes: Vec<Float>,
    /// Real part of the value after each term.
    pub partial_sums: Vec<Float>,
    /// Magnitude of the first omitted term (0 for closed forms).
    pub error_estimate: Float,
    pub status: Status,
}

impl FormulaResult {
    /// A closed-form value with no truncation.
    pub fn exact(value: Float) -> Self {
        let prec = value.prec();
        Self {
            value,
            value_imag: None,
            orders_used: 0,
            term_magnitudes: Vec::new(),
            partial_sums: Vec::new(),
            error_estimate: Float::new(prec),
            status: Status::Converged,
        }
    }

    /// Adds a constant offset to the value.
    pub fn shifted(mut self, offset: &Float) -> Self {
        self.value += offset;
        for p in &mut self.partial_sums {
            *p += offset;
        }
        self
    }
}

/// Number of preceding magnitudes a growing term must exceed.
pub const GUARD_WINDOW: usize = 8;

/// Sums `terms` according to `policy`, starting from `initial`.
///
/// Adaptive mode stops once the current term and the next one both fall
/// below `tolerance * max(1, |partial|)`; the next term then becomes the
/// error estimate. A single vanishing term therefore cannot end the sum early.
///
/// A term counts towards the divergence guard only when it exceeds every
/// magnitude in the preceding [`GUARD_WINDOW`] terms, so the rebound after a
/// sign change of the numerator is not mistaken for growth.
pub fn adaptive_truncate_from<I>(initial: Float, initial_imag: Option<Float>, terms: I, policy: &TruncationPolicy) -> FormulaResult
where
    I: IntoIterator<Item = FactorialSeriesTerm>,
{
    let prec = initial.prec();
    let mut partial = initial;
    let mut partial_imag = initial_imag;
    let mut magnitudes = Vec::new();
    let mut partials = Vec::new();
    let mut growing = 0usize;
    let mut iter = terms.into_iter().peekable();

    let limit = match policy.mode {
        TruncationMode::Fixed(k) => k,
        TruncationMode::Adaptive => policy.max_order,
    };
    let below = |magnitude: &Float, partial: &Float| {
        let scale = Float::with_val(prec, partial.abs_ref()).max(&Float::with_val(prec, 1));
        *magnitude < scale * policy.tolerance
    };

    let mut status = match policy.mode {
        TruncationMode::Fixed(_) => Status::Converged,
        TruncationMode::Adaptive => Status::MaxOrderReached,
    };
    while magnitudes.len() < limit {
        let Some(term) = iter.next() else {
            status = Status::Converged;
            break;
        };
        let magnitude = term.magnitude();
        partial += &term.value;
        if let Some(im) = &term.value_imag {
            let acc = partial_imag.get_or_insert_with(|| Float::new(prec));
            *acc += im;
        }
        let window = &magnitudes[magnitudes.len().saturating_sub(GUARD_WINDOW)..];
        if !window.is_empty() {
            if window.iter().all(|m| magnitude > *m) {
                growing += 1;
            } else {
                growing = 0;
            }
        }
        magnitudes.push(magnitude.clone());
        partials.push(partial.clone());

        if matches!(policy.mode, TruncationMode::Adaptive) {
            if policy.divergence_guard > 0 && growing >= policy.divergence_guard {
                status = Status::DivergenceGuardTripped;
                break;
            }
            if below(&magnitude, &partial) {
                if let Some(next) = iter.peek() {
                    if below(&next.magnitude(), &partial) {
                        status = Status::Converged;
                        break;
                    }
                }
            }
        }
    }
    let error_estimate = iter.next().map(|t| t.magnitude()).unwrap_or_else(|| Float::new(prec));
    FormulaResult {
        value: partial,
        value_imag: partial_imag,
        orders_used: magnitudes.len(),
        term_magnitudes: magnitudes,
        partial_sums: partials,
        error_estimate,
        status,
    }
}

/// [`adaptive_truncate_from`] starting at zero.
pub fn adaptive_truncate<I>(terms: I, policy: &TruncationPolicy, prec: u32) -> FormulaResult
where
    I: IntoIterator<Item = FactorialSeriesTerm>,
{
    adaptive_truncate_from(Float::new(prec), None, terms, policy)
}
