use std::sync::{Arc, OnceLock, RwLock};

use rug::Integer;

use crate::error::{Error, Result};

/// Signed Stirling numbers of the first kind `S_k(l)` for `0 <= l <= k <= max_k`,
/// with `(x)_k = (-1)^k sum_l (-1)^l S_k(l) x^l`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StirlingTable {
    max_k: usize,
    rows: Vec<Vec<Integer>>,
}

impl StirlingTable {
    /// Builds rows `0..=max_k` by `S_{k+1}(l) = S_k(l-1) - k S_k(l)`.
    pub fn new(max_k: usize) -> Self {
        let mut table = Self { max_k: 0, rows: vec![vec![Integer::from(1)]] };
        table.extend_to(max_k);
        table
    }

    fn extend_to(&mut self, max_k: usize) {
        while self.rows.len() <= max_k {
            let k = self.rows.len() - 1;
            let prev = &self.rows[k];
            let mut next = vec![Integer::new(); k + 2];
            for (l, slot) in next.iter_mut().enumerate() {
                let mut value = if l >= 1 { prev[l - 1].clone() } else { Integer::new() };
                if l <= k {
                    value -= Integer::from(&prev[l] * k as u64);
                }
                *slot = value;
            }
            self.rows.push(next);
        }
        self.max_k = self.max_k.max(max_k);
    }

    /// Shared table with at least `max_k` rows; grows and is never evicted.
    pub fn shared(max_k: usize) -> Arc<Self> {
        static CACHE: OnceLock<RwLock<Arc<StirlingTable>>> = OnceLock::new();
        let cache = CACHE.get_or_init(|| RwLock::new(Arc::new(StirlingTable::new(64))));
        {
            let current = cache.read().expect("stirling cache poisoned");
            if current.max_k >= max_k {
                return Arc::clone(&current);
            }
        }
        let mut guard = cache.write().expect("stirling cache poisoned");
        if guard.max_k < max_k {
            let mut grown = (**guard).clone();
            grown.extend_to(max_k.max(2 * guard.max_k));
            *guard = Arc::new(grown);
        }
        Arc::clone(&guard)
    }

    pub fn max_k(&self) -> usize {
        self.max_k
    }

    /// Row `k` as a slice indexed by `l`.
    pub fn row(&self, k: usize) -> Result<&[Integer]> {
        self.rows
            .get(k)
            .filter(|_| k <= self.max_k)
            .map(Vec::as_slice)
            .ok_or_else(|| Error::Range(format!("row {k} exceeds table size {}", self.max_k)))
    }

    pub fn get(&self, k: usize, l: usize) -> Result<&Integer> {
        if l > k || k > self.max_k {
            return Err(Error::Range(format!("S_{k}({l}) with table size {}", self.max_k)));
        }
        Ok(&self.rows[k][l])
    }
}

/// `S_k(l)` from a table, as an owned integer.
pub fn stirling_first(table: &StirlingTable, k: usize, l: usize) -> Result<Integer> {
    table.get(k, l).cloned()
}
