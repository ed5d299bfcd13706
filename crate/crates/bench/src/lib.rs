//! Criterion benchmarks for qel-core live in `benches/core.rs`.
//! Run with `cargo bench -p qel-bench`.
