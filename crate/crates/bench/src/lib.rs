//! Criterion benchmarks for the stirling-sums library; see `benches/formulas.rs`.
