//! Criterion benchmarks for `p1hall`; see `benches/hall.rs`.
