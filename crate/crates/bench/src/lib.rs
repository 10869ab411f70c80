//! Criterion benchmarks for the pipeline stages; run with `cargo bench -p bei-bench`.
