//! Criterion benchmarks for `satotate-core`; see `benches/`.
