//! Library side of the `axb` command-line tool.
//!
//! Holds the benchmark harness so integration tests can drive the same
//! code the `bench` subcommand runs.

pub mod bench;
