//! Criterion benchmarks for hwpkit; see `benches/`.
