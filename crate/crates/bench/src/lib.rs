//! Criterion benchmarks for `qosc-core`; see `benches/`.
