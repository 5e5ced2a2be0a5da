//! Criterion benchmarks for the hot paths of `robarch`; see `benches/`.
