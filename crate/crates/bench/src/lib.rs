//! Criterion benchmarks for the kcone kernels live in `benches/`.
