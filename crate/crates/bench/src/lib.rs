//! Criterion benchmarks for `stabgraph`; see `benches/`.
