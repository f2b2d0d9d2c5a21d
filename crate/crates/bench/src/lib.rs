//! Criterion benchmarks for the means; see `benches/means.rs`.
