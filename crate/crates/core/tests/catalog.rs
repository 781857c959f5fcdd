use rug::{Float, Rational};

use stirling_sums::catalog::{evaluate, list_formulas, EvalRequest, Family, FormulaId};
use stirling_sums::engine::TruncationPolicy;
use stirling_sums::oracle::{brute_force, brute_force_request, convergence_study, SumParameters};
use stirling_sums::real::parse_rational;
use stirling_sums::special::{evaluate_slow, slow_tail_bound, SlowFormula, SlowSeriesRequest};

fn q(text: &str) -> Rational {
    parse_rational(text).unwrap()
}

fn id(text: &str) -> FormulaId {
    text.parse().unwrap()
}

fn diff(a: &Float, b: &Float) -> f64 {
    Float::with_val(a.prec().max(b.prec()), a - b).abs().to_f64()
}

fn adaptive(formula: &str, x: Rational) -> EvalRequest {
    EvalRequest::new(id(formula), x)
        .with_default_parameters()
        .with_policy(TruncationPolicy::adaptive(1e-30, 400))
}

#[test]
fn harmonic_at_ten_and_a_half() {
    let result = evaluate(&adaptive("harmonic.v2", q("10.5"))).unwrap();
    let exact = Float::with_val(192, Rational::from((7381, 2520)));
    assert!(diff(&result.value, &exact) < 1e-22);
}

#[test]
fn classical_power_sums() {
    for (n, tolerance) in [(5u32, 1e-10), (17, 1e-25)] {
        let n_q = Rational::from(n);
        let closed = [
            n_q.clone(),
            Rational::from(&n_q * (n + 1)) / 2u32,
            Rational::from(&n_q * (n + 1)) * (2 * n + 1) / 6u32,
            Rational::from(&n_q * (n + 1)).square() / 4u32,
            Rational::from(&n_q * (n + 1)) * (2 * n + 1) * (3 * n * n + 3 * n - 1) / 30u32,
        ];
        for (m, want) in closed.iter().enumerate() {
            let req = adaptive("faulhaber_ext.v1", n_q.clone()).with_real_m(Rational::from(m as u32));
            let value = evaluate(&req).unwrap().value;
            let relative = diff(&value, &Float::with_val(192, want)) / want.to_f64();
            assert!(relative < tolerance, "m = {m}, n = {n}: {relative:e}");
        }
    }
}

#[test]
fn gregory_leibniz_partial_sum() {
    let req = adaptive("gregory_leibniz.v1", q("10"));
    let oracle = brute_force_request(&req).unwrap();
    assert_eq!(oracle.terms, 11);
    assert!(diff(&evaluate(&req).unwrap().value, &oracle.value) < 1e-25);
}

#[test]
fn floor_is_constant_between_integers() {
    let epsilon = Rational::from((1, 1u64 << 40));
    let n = Rational::from(20);
    let below_next = Rational::from(&n + 1u32) - &epsilon;
    for formula in ["harmonic.v1", "zeta2.v1", "sqrt.v1", "log_factorial.v1", "alt_harmonic.v1", "zeta3.v2"] {
        let at_n = evaluate(&adaptive(formula, n.clone())).unwrap().value;
        let before = evaluate(&adaptive(formula, below_next.clone())).unwrap().value;
        let at_next = evaluate(&adaptive(formula, Rational::from(&n + 1u32))).unwrap().value;
        assert!(diff(&at_n, &before) < 1e-15, "{formula} within [n, n+1)");
        let jump = Float::with_val(192, &at_next - &before);
        let summand = brute_force_request(&adaptive(formula, Rational::from(21))).unwrap().value
            - brute_force_request(&adaptive(formula, n.clone())).unwrap().value;
        assert!(diff(&jump, &summand) < 1e-15, "{formula} jump at n+1");
    }
}

#[test]
fn sqrt_study_at_integer_point() {
    let report = convergence_study(&EvalRequest::new(id("sqrt.v1"), Rational::from(100)), 4).unwrap();
    assert_eq!(report.rows.len(), 4);
    let root = Float::with_val(256, 100).sqrt();
    let mut denominator = Rational::from(1);
    let mut previous: Option<Float> = None;
    for (k, c) in [(1u32, (1, 24)), (2, (1, 24)), (3, (53, 640)), (4, (79, 320))] {
        denominator *= 100 + k;
        let term = Float::with_val(256, &root * Float::with_val(256, Rational::from(c) / &denominator));
        let row = &report.rows[k as usize - 1];
        assert_eq!(row.order, k as usize);
        if let Some(prev) = &previous {
            assert!(diff(&Float::with_val(256, &row.partial_value - prev), &term) < 1e-40, "k = {k}");
        }
        previous = Some(row.partial_value.clone());
    }
}

#[test]
fn harmonic_study_decreases() {
    let report = convergence_study(&EvalRequest::new(id("harmonic.v2"), q("10.5")), 20).unwrap();
    assert_eq!(report.rows.len(), 20);
    assert_eq!(report.oracle_cost, 10);
    let errors: Vec<f64> = report.rows.iter().map(|r| r.abs_error.to_f64()).collect();
    assert!(errors.windows(2).skip(5).all(|w| w[1] < w[0]));
    let single = convergence_study(&EvalRequest::new(id("harmonic.v2"), q("10.5")), 1).unwrap();
    assert_eq!(single.rows.len(), 1);
}

#[test]
fn padding_covers_float_sums() {
    let params = SumParameters::default();
    let low = brute_force(Family::Sqrt, &q("5000.5"), &params, 128).unwrap().value;
    let high = brute_force(Family::Sqrt, &q("5000.5"), &params, 256).unwrap().value;
    let bound = low.to_f64() * 5000.0 * f64::powi(2.0, -128);
    assert!(diff(&low, &high) <= bound);
}

#[test]
fn slow_formula_examples() {
    let sqrt = SlowSeriesRequest { formula: SlowFormula::SqrtFresnel, x: q("4"), outer_terms: 2000, precision_bits: 128 };
    let direct = 1.0 + 2f64.sqrt() + 3f64.sqrt() + 2.0;
    let value = evaluate_slow(&sqrt).unwrap().value.to_f64();
    assert!((value - direct).abs() < slow_tail_bound(SlowFormula::SqrtFresnel, &q("4"), 2000));

    let harmonic = SlowSeriesRequest { formula: SlowFormula::HarmonicCosint, x: q("3.5"), outer_terms: 5000, precision_bits: 128 };
    let value = evaluate_slow(&harmonic).unwrap().value.to_f64();
    assert!((value - 11.0 / 6.0).abs() < slow_tail_bound(SlowFormula::HarmonicCosint, &q("3.5"), 5000));

    let one = evaluate_slow(&SlowSeriesRequest { outer_terms: 1, ..harmonic }).unwrap();
    assert_eq!(one.term_magnitudes.len(), 1);
}

#[test]
fn slow_errors_shrink_with_outer_terms() {
    let x = q("6.5");
    let direct: f64 = (1..=6).map(|k| (k as f64).sqrt()).sum();
    let errors: Vec<f64> = [50usize, 100, 200, 400, 800]
        .iter()
        .map(|&outer_terms| {
            let req = SlowSeriesRequest { formula: SlowFormula::SqrtFresnel, x: x.clone(), outer_terms, precision_bits: 128 };
            (evaluate_slow(&req).unwrap().value.to_f64() - direct).abs()
        })
        .collect();
    assert!(errors.windows(2).all(|w| w[1] < 2.0 * w[0]), "{errors:?}");
    assert!(errors[4] < errors[0]);
}

#[test]
fn catalog_is_stable_and_complete() {
    let list = list_formulas();
    assert!(list.len() >= 40);
    assert!(list.iter().all(|info| !info.description.is_empty()));
    assert_eq!(list.iter().filter(|f| f.id.family == Family::Sqrt).count(), 3);
    assert!(list.iter().any(|f| f.id == id("harmonic.v1")));
}
