//! Adaptive Gauss–Legendre quadrature at arbitrary precision.

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use rug::float::Constant;
use rug::Float;

use crate::error::{Error, Result};

const NODES: usize = 32;
const MAX_DEPTH: u32 = 40;

/// Nodes and weights on `[-1, 1]` for an `n`-point rule.
#[derive(Debug)]
pub struct GaussLegendre {
    pub nodes: Vec<Float>,
    pub weights: Vec<Float>,
}

impl GaussLegendre {
    /// Roots of `P_n` by Newton iteration from the Chebyshev-like initial guess.
    pub fn new(n: usize, prec: u32) -> Self {
        let work = prec + 32;
        let pi = Float::with_val(work, Constant::Pi);
        let tolerance = Float::with_val(work, Float::i_exp(1, -(work as i32) + 8));
        let mut nodes = Vec::with_capacity(n);
        let mut weights = Vec::with_capacity(n);
        for i in 0..n {
            let angle = Float::with_val(work, &pi * (4 * i as u64 + 3)) / (4 * n as u64 + 2);
            let mut x = angle.cos();
            for _ in 0..200 {
                let (p, dp) = legendre_with_derivative(n, &x);
                let step = Float::with_val(work, &p / &dp);
                x -= &step;
                if step.abs() < tolerance {
                    break;
                }
            }
            let (_, dp) = legendre_with_derivative(n, &x);
            let one_minus = Float::with_val(work, 1u32) - Float::with_val(work, x.clone().square());
            let weight = Float::with_val(work, 2u32) / (one_minus * dp.square());
            nodes.push(Float::with_val(prec, &x));
            weights.push(Float::with_val(prec, &weight));
        }
        Self { nodes, weights }
    }

    /// Shared rule for `(n, prec)`.
    pub fn cached(n: usize, prec: u32) -> Arc<Self> {
        type Cache = Mutex<HashMap<(usize, u32), Arc<GaussLegendre>>>;
        static CACHE: OnceLock<Cache> = OnceLock::new();
        let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
        if let Some(rule) = cache.lock().expect("quadrature cache poisoned").get(&(n, prec)) {
            return Arc::clone(rule);
        }
        let rule = Arc::new(Self::new(n, prec));
        cache.lock().expect("quadrature cache poisoned").insert((n, prec), Arc::clone(&rule));
        rule
    }

    /// `int_a^b f` with this rule, no error control.
    pub fn apply<F: Fn(&Float) -> Float>(&self, f: &F, a: &Float, b: &Float) -> Float {
        let prec = a.prec().max(b.prec());
        let half = Float::with_val(prec, b - a) / 2u32;
        let mid = Float::with_val(prec, a + b) / 2u32;
        let mut acc = Float::new(prec);
        for (node, weight) in self.nodes.iter().zip(&self.weights) {
            let t = Float::with_val(prec, &mid + Float::with_val(prec, &half * node));
            acc += Float::with_val(prec, weight * f(&t));
        }
        acc * half
    }
}

fn legendre_with_derivative(n: usize, x: &Float) -> (Float, Float) {
    let prec = x.prec();
    let mut p0 = Float::with_val(prec, 1u32);
    let mut p1 = x.clone();
    for k in 2..=n {
        let a = Float::with_val(prec, x * &p1) * (2 * k as u64 - 1);
        let b = Float::with_val(prec, &p0 * (k as u64 - 1));
        let p2 = (a - b) / k as u64;
        p0 = p1;
        p1 = p2;
    }
    let x2m1 = Float::with_val(prec, x.clone().square() - 1u32);
    let dp = Float::with_val(prec, Float::with_val(prec, x * &p1) - &p0) * n as u64 / x2m1;
    (p1, dp)
}

/// `int_a^b f` to absolute tolerance `tol` by recursive bisection of a
/// 32-point Gauss–Legendre rule.
pub fn integrate<F: Fn(&Float) -> Float>(f: &F, a: &Float, b: &Float, tol: &Float) -> Result<Float> {
    let prec = a.prec().max(b.prec());
    let rule = GaussLegendre::cached(NODES, prec);
    let whole = rule.apply(f, a, b);
    refine(f, &rule, a, b, whole, tol, 0)
}

fn refine<F: Fn(&Float) -> Float>(
    f: &F,
    rule: &GaussLegendre,
    a: &Float,
    b: &Float,
    whole: Float,
    tol: &Float,
    depth: u32,
) -> Result<Float> {
    let prec = whole.prec();
    let mid = Float::with_val(prec, a + b) / 2u32;
    let left = rule.apply(f, a, &mid);
    let right = rule.apply(f, &mid, b);
    let halves = Float::with_val(prec, &left + &right);
    let diff = Float::with_val(prec, &halves - &whole).abs();
    if diff <= *tol {
        return Ok(halves);
    }
    if depth >= MAX_DEPTH {
        return Err(Error::Quadrature { a: a.to_string_radix(10, Some(20)), b: b.to_string_radix(10, Some(20)) });
    }
    let half_tol = Float::with_val(prec, tol / 2u32);
    let l = refine(f, rule, a, &mid, left, &half_tol, depth + 1)?;
    let r = refine(f, rule, &mid, b, right, &half_tol, depth + 1)?;
    Ok(l + r)
}
