//! Criterion benchmarks for `nqueens-core`; see `benches/`.
