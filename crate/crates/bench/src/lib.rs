//! Benchmark-only crate; see `benches/kr.rs`. Run with `cargo bench`.
