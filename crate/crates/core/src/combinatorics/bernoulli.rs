//! Bernoulli and Euler numbers and polynomials.
//!
//! Bernoulli numbers follow the `x/(e^x - 1)` convention (`B_1 = -1/2`).
//! Both number sequences are produced from the integer tangent and secant
//! number recurrences and cached; the caches only grow.
//!
//! Formula evaluation needs `B_n(t)` and `E_n(t)` at one rational point for
//! every `n` up to a few hundred, so [`PolynomialValues`] computes whole
//! value tables in integer arithmetic over a common denominator instead of
//! building and evaluating each polynomial.

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock, RwLock};

use rug::{Integer, Rational};

use super::polynomial::RationalPolynomial;

fn bernoulli_cache() -> &'static RwLock<Vec<Rational>> {
    static CACHE: OnceLock<RwLock<Vec<Rational>>> = OnceLock::new();
    CACHE.get_or_init(|| RwLock::new(Vec::new()))
}

fn euler_cache() -> &'static RwLock<Vec<Integer>> {
    static CACHE: OnceLock<RwLock<Vec<Integer>>> = OnceLock::new();
    CACHE.get_or_init(|| RwLock::new(Vec::new()))
}

/// Tangent numbers `T_1..=T_n` (`T_1 = 1, T_2 = 2, T_3 = 16`), index 0 unused.
fn tangent_numbers(n: usize) -> Vec<Integer> {
    let mut t = vec![Integer::new(); n + 1];
    if n == 0 {
        return t;
    }
    t[1] = Integer::from(1);
    for k in 2..=n {
        t[k] = Integer::from(&t[k - 1] * (k as u64 - 1));
    }
    for k in 2..=n {
        for j in k..=n {
            let a = Integer::from(&t[j - 1] * (j as u64 - k as u64));
            let b = Integer::from(&t[j] * (j as u64 - k as u64 + 2));
            t[j] = a + b;
        }
    }
    t
}

/// Secant numbers `S_0..=S_n` (`1, 1, 5, 61, 1385, ...`).
fn secant_numbers(n: usize) -> Vec<Integer> {
    let mut s = vec![Integer::new(); n + 1];
    s[0] = Integer::from(1);
    for k in 1..=n {
        s[k] = Integer::from(&s[k - 1] * k as u64);
    }
    for k in 1..=n {
        for j in k + 1..=n {
            let a = Integer::from(&s[j - 1] * (j as u64 - k as u64));
            let b = Integer::from(&s[j] * (j as u64 - k as u64 + 1));
            s[j] = a + b;
        }
    }
    s
}

fn bernoulli_table(len: usize) -> Vec<Rational> {
    let half = len / 2 + 1;
    let tangent = tangent_numbers(half);
    let mut out = Vec::with_capacity(len);
    for n in 0..len {
        let value = match n {
            0 => Rational::from(1),
            1 => Rational::from((-1, 2)),
            _ if n % 2 == 1 => Rational::new(),
            _ => {
                let k = n / 2;
                let four_k = Integer::from(1) << (2 * n as u32 / 2);
                let denom = Integer::from(&four_k * Integer::from(&four_k - 1u32));
                let numer = Integer::from(&tangent[k] * (n as u64));
                let magnitude = Rational::from((numer, denom));
                if k % 2 == 1 {
                    magnitude
                } else {
                    -magnitude
                }
            }
        };
        out.push(value);
    }
    out
}

fn ensure_bernoulli(len: usize) {
    if bernoulli_cache().read().expect("bernoulli cache poisoned").len() >= len {
        return;
    }
    let mut guard = bernoulli_cache().write().expect("bernoulli cache poisoned");
    if guard.len() < len {
        let target = len.max(2 * guard.len()).max(32);
        *guard = bernoulli_table(target);
    }
}

/// The Bernoulli number `B_k`.
pub fn bernoulli_number(k: usize) -> Rational {
    ensure_bernoulli(k + 1);
    bernoulli_cache().read().expect("bernoulli cache poisoned")[k].clone()
}

/// `B_0..B_{len-1}` as one snapshot.
pub fn bernoulli_numbers(len: usize) -> Vec<Rational> {
    ensure_bernoulli(len);
    bernoulli_cache().read().expect("bernoulli cache poisoned")[..len].to_vec()
}

fn ensure_euler(len: usize) {
    if euler_cache().read().expect("euler cache poisoned").len() >= len {
        return;
    }
    let mut guard = euler_cache().write().expect("euler cache poisoned");
    if guard.len() < len {
        let target = len.max(2 * guard.len()).max(32);
        let secant = secant_numbers(target / 2 + 1);
        *guard = (0..target)
            .map(|n| {
                if n % 2 == 1 {
                    Integer::new()
                } else if (n / 2) % 2 == 0 {
                    secant[n / 2].clone()
                } else {
                    -secant[n / 2].clone()
                }
            })
            .collect();
    }
}

/// The Euler number `E_k` (`E_2 = -1`, `E_10 = -50521`, odd indices vanish).
pub fn euler_number(k: usize) -> Integer {
    ensure_euler(k + 1);
    euler_cache().read().expect("euler cache poisoned")[k].clone()
}

pub fn euler_numbers(len: usize) -> Vec<Integer> {
    ensure_euler(len);
    euler_cache().read().expect("euler cache poisoned")[..len].to_vec()
}

/// Binomial row `C(n, 0..=n)`.
pub(crate) fn binomial_row(n: usize) -> Vec<Integer> {
    let mut row = Vec::with_capacity(n + 1);
    let mut c = Integer::from(1);
    row.push(c.clone());
    for j in 1..=n {
        c *= (n + 1 - j) as u64;
        c /= j as u64;
        row.push(c.clone());
    }
    row
}

/// `B_n(t) = sum_j C(n, j) B_j t^(n-j)`.
pub fn bernoulli_polynomial(n: usize) -> RationalPolynomial {
    let numbers = bernoulli_numbers(n + 1);
    let row = binomial_row(n);
    let coefficients = (0..=n)
        .map(|power| Rational::from(&numbers[n - power] * &row[power]))
        .collect();
    RationalPolynomial::new(coefficients)
}

/// `E_n(t) = 2/(n+1) * sum_i C(n+1, i) B_(n+1-i) (1 - 2^(n+1-i)) t^i`.
pub fn euler_polynomial(n: usize) -> RationalPolynomial {
    let numbers = bernoulli_numbers(n + 2);
    let row = binomial_row(n + 1);
    let outer = Rational::from((2, n as u64 + 1));
    let coefficients = (0..=n)
        .map(|i| {
            let shift = (n + 1 - i) as u32;
            let weight = Integer::from(1) - (Integer::from(1) << shift);
            let c = Rational::from(&numbers[n + 1 - i] * &row[i]) * weight;
            c * &outer
        })
        .collect();
    RationalPolynomial::new(coefficients)
}

/// Which polynomial family a value table holds.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum PolynomialKind {
    Bernoulli,
    Euler,
}

/// Exact values `P_0(t), ..., P_{len-1}(t)` of one polynomial family at a
/// rational point.
#[derive(Debug, Clone)]
pub struct PolynomialValues {
    pub kind: PolynomialKind,
    pub point: Rational,
    values: Vec<Rational>,
}

impl PolynomialValues {
    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn get(&self, n: usize) -> &Rational {
        &self.values[n]
    }

    pub fn values(&self) -> &[Rational] {
        &self.values
    }

    fn compute(kind: PolynomialKind, point: &Rational, len: usize) -> Self {
        let values = match kind {
            PolynomialKind::Bernoulli => bernoulli_values(point, len),
            PolynomialKind::Euler => euler_values(point, len),
        };
        Self { kind, point: point.clone(), values }
    }

    /// Shared, growing cache keyed by `(kind, point)`.
    pub fn cached(kind: PolynomialKind, point: &Rational, len: usize) -> Arc<Self> {
        type Cache = Mutex<HashMap<(PolynomialKind, Rational), Arc<PolynomialValues>>>;
        static CACHE: OnceLock<Cache> = OnceLock::new();
        let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
        let key = (kind, point.clone());
        if let Some(found) = cache.lock().expect("value cache poisoned").get(&key) {
            if found.len() >= len {
                return Arc::clone(found);
            }
        }
        let fresh = Arc::new(Self::compute(kind, point, len.max(16)));
        let mut guard = cache.lock().expect("value cache poisoned");
        let entry = guard.entry(key).or_insert_with(|| Arc::clone(&fresh));
        if entry.len() < fresh.len() {
            *entry = Arc::clone(&fresh);
        }
        Arc::clone(entry)
    }
}

/// `B_n(p/q) * L * q^n = sum_j C(n,j) (B_j L) p^(n-j) q^j` with `L` the lcm of
/// the Bernoulli denominators, so the inner loop is integer-only.
fn bernoulli_values(point: &Rational, len: usize) -> Vec<Rational> {
    if len == 0 {
        return Vec::new();
    }
    let numbers = bernoulli_numbers(len);
    let mut lcm = Integer::from(1);
    for b in &numbers {
        lcm.lcm_mut(b.denom());
    }
    let scaled: Vec<Integer> = numbers
        .iter()
        .map(|b| Integer::from(b.numer() * Integer::from(&lcm / b.denom())))
        .collect();
    let (p, q) = (point.numer().clone(), point.denom().clone());
    let p_pow = powers(&p, len);
    let q_pow = powers(&q, len);
    let mut out = Vec::with_capacity(len);
    for n in 0..len {
        let row = binomial_row(n);
        let mut acc = Integer::new();
        for j in 0..=n {
            if scaled[j] == 0 {
                continue;
            }
            let mut term = Integer::from(&row[j] * &scaled[j]);
            term *= &p_pow[n - j];
            term *= &q_pow[j];
            acc += term;
        }
        let denom = Integer::from(&lcm * &q_pow[n]);
        out.push(Rational::from((acc, denom)));
    }
    out
}

/// `E_n(t) = sum_k C(n,k) E_k/2^k (t - 1/2)^(n-k)`; with `t - 1/2 = r/(2q)`
/// this becomes `sum_k C(n,k) E_k r^(n-k) q^k / (2q)^n`.
fn euler_values(point: &Rational, len: usize) -> Vec<Rational> {
    if len == 0 {
        return Vec::new();
    }
    let numbers = euler_numbers(len);
    let q = point.denom().clone();
    let r = Integer::from(point.numer() * 2u32) - &q;
    let r_pow = powers(&r, len);
    let q_pow = powers(&q, len);
    let two_q = Integer::from(&q * 2u32);
    let two_q_pow = powers(&two_q, len);
    let mut out = Vec::with_capacity(len);
    for n in 0..len {
        let row = binomial_row(n);
        let mut acc = Integer::new();
        for k in (0..=n).step_by(2) {
            let mut term = Integer::from(&row[k] * &numbers[k]);
            term *= &r_pow[n - k];
            term *= &q_pow[k];
            acc += term;
        }
        out.push(Rational::from((acc, two_q_pow[n].clone())));
    }
    out
}

fn powers(base: &Integer, len: usize) -> Vec<Integer> {
    let mut out = Vec::with_capacity(len);
    let mut acc = Integer::from(1);
    for _ in 0..len {
        out.push(acc.clone());
        acc *= base;
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> Rational {
        Rational::from((n, d))
    }

    /// Independent route: `sum_{j=0}^{k} C(k+1, j) B_j = 0`.
    fn bernoulli_by_recurrence(n: usize) -> Vec<Rational> {
        let mut b = vec![Rational::from(1)];
        for k in 1..=n {
            let row = binomial_row(k + 1);
            let mut acc = Rational::new();
            for (j, bj) in b.iter().enumerate() {
                acc += Rational::from(bj * &row[j]);
            }
            b.push(-acc / Integer::from(k as u64 + 1));
        }
        b
    }

    /// Independent route: power-series division of `2e^x/(e^{2x}+1)`.
    fn euler_by_series_division(n: usize) -> Vec<Integer> {
        // numerator 2 e^x and denominator e^{2x} + 1 as exponential coefficients
        let fact = |k: usize| (1..=k as u64).fold(Integer::from(1), |a, b| a * b);
        let num: Vec<Rational> = (0..=n).map(|k| Rational::from((Integer::from(2), fact(k)))).collect();
        let den: Vec<Rational> = (0..=n)
            .map(|k| {
                let two_k = Integer::from(1) << k as u32;
                let c = Rational::from((two_k, fact(k)));
                if k == 0 {
                    c + 1u32
                } else {
                    c
                }
            })
            .collect();
        let mut quotient: Vec<Rational> = Vec::new();
        for k in 0..=n {
            let mut acc = num[k].clone();
            for j in 0..k {
                acc -= Rational::from(&quotient[j] * &den[k - j]);
            }
            quotient.push(acc / &den[0]);
        }
        quotient
            .iter()
            .enumerate()
            .map(|(k, c)| {
                let v = Rational::from(c * fact(k));
                assert_eq!(*v.denom(), 1);
                v.into_numer_denom().0
            })
            .collect()
    }

    #[test]
    fn bernoulli_examples() {
        assert_eq!(bernoulli_number(0), q(1, 1));
        assert_eq!(bernoulli_number(1), q(-1, 2));
        assert_eq!(bernoulli_number(12), q(-691, 2730));
    }

    #[test]
    fn bernoulli_matches_recurrence_oracle() {
        let oracle = bernoulli_by_recurrence(80);
        assert_eq!(bernoulli_numbers(81), oracle);
    }

    #[test]
    fn euler_examples() {
        assert_eq!(euler_number(0), 1);
        assert_eq!(euler_number(2), -1);
        assert_eq!(euler_number(10), -50521);
        let oracle = euler_by_series_division(40);
        assert_eq!(euler_numbers(41), oracle);
    }

    #[test]
    fn polynomial_examples() {
        assert_eq!(bernoulli_polynomial(0), RationalPolynomial::constant(q(1, 1)));
        assert_eq!(bernoulli_polynomial(2), RationalPolynomial::new(vec![q(1, 6), q(-1, 1), q(1, 1)]));
        assert_eq!(
            bernoulli_polynomial(3),
            RationalPolynomial::new(vec![q(0, 1), q(1, 2), q(-3, 2), q(1, 1)])
        );
        assert_eq!(euler_polynomial(0), RationalPolynomial::constant(q(1, 1)));
        assert_eq!(euler_polynomial(1), RationalPolynomial::new(vec![q(-1, 2), q(1, 1)]));
        assert_eq!(euler_polynomial(1).eval(&q(0, 1)), q(-1, 2));
    }

    /// `E_n(x) = sum_j C(n,j) E_j/2^j (x - 1/2)^(n-j)` as an independent route.
    #[test]
    fn euler_polynomial_matches_euler_number_expansion() {
        for n in 0..=24 {
            let row = binomial_row(n);
            let base = RationalPolynomial::linear(q(-1, 2));
            let mut expected = RationalPolynomial::zero();
            let mut power = RationalPolynomial::constant(q(1, 1));
            for j in (0..=n).rev() {
                let c = Rational::from((Integer::from(&row[j] * euler_number(j)), Integer::from(1) << j as u32));
                expected = expected + power.scale(&c);
                power = &power * &base;
            }
            assert_eq!(euler_polynomial(n), expected, "n = {n}");
        }
    }

    #[test]
    fn value_tables_match_polynomials() {
        for point in [q(0, 1), q(7, 10), q(1, 2), q(1, 4), q(5, 3)] {
            let b = PolynomialValues::compute(PolynomialKind::Bernoulli, &point, 40);
            let e = PolynomialValues::compute(PolynomialKind::Euler, &point, 40);
            for n in 0..40 {
                assert_eq!(*b.get(n), bernoulli_polynomial(n).eval(&point), "B_{n}({point})");
                assert_eq!(*e.get(n), euler_polynomial(n).eval(&point), "E_{n}({point})");
            }
        }
    }

    #[test]
    fn cached_tables_grow() {
        let point = q(3, 7);
        let small = PolynomialValues::cached(PolynomialKind::Bernoulli, &point, 10);
        let large = PolynomialValues::cached(PolynomialKind::Bernoulli, &point, 100);
        assert!(large.len() >= 100);
        assert_eq!(small.get(9), large.get(9));
    }
}
