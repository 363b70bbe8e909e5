//! Benchmarks for the `idealarr` library; see `benches/core.rs`.
