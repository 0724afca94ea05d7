//! Command-line front end for `bellkit-core`: tables, series listings,
//! identity verification, benchmarks and OEIS lookups.

pub mod args;
pub mod bench;
pub mod commands;
pub mod config;
pub mod error;
pub mod oeis;
pub mod output;

pub use args::Cli;
pub use commands::{run, Outcome};
pub use error::CliError;
