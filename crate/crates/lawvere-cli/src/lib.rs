//! Support library for the `lawvere` binary: output emission (DOT and
//! JSON) and deterministic multi-threaded graph generation.
//!
//! The binary itself lives in `main.rs`; everything testable in isolation
//! is here.

pub mod emit;
pub mod parallel;
