//! Command-line grammar.

use std::ops::RangeInclusive;
use std::path::PathBuf;

use bellkit_core::ExactRational;
use clap::{Parser, Subcommand};

use crate::output::Format;

#[derive(Debug, Parser)]
#[command(
    name = "bellkit",
    version,
    about = "Exact tables, generating functions and identity checks for Bell polynomials of the second kind"
)]
pub struct Cli {
    /// Output format: text, json or csv.
    #[arg(long, global = true, value_parser = parse_format)]
    pub format: Option<Format>,
    /// Largest index n (tables, verify).
    #[arg(long, global = true)]
    pub max_n: Option<usize>,
    /// Truncation order (series, bench).
    #[arg(long, global = true)]
    pub order: Option<usize>,
    /// Poly index range, `A..B` (inclusive), `A..=B` or a single `A`.
    #[arg(long, global = true, allow_hyphen_values = true, value_parser = parse_k_range)]
    pub k_range: Option<RangeInclusive<i64>>,
    /// Substitute λ = P/Q.
    #[arg(long, global = true, allow_hyphen_values = true, value_parser = parse_rational)]
    pub at_lambda: Option<ExactRational>,
    /// Substitute x = P/Q.
    #[arg(long, global = true, allow_hyphen_values = true, value_parser = parse_rational)]
    pub at_x: Option<ExactRational>,
    /// Directory of recorded OEIS responses.
    #[arg(long, global = true)]
    pub fixtures: Option<PathBuf>,
    /// Timeout for live OEIS requests.
    #[arg(long, global = true)]
    pub timeout_ms: Option<u64>,
    /// TOML config file.
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Values of a family or Stirling triangle for n ≤ max-n (default 8).
    Table {
        /// classical_bell, deg_bell, bell2, deg_bell2, poly_bell2, deg_poly_bell2,
        /// stirling1, stirling2, deg_stirling1, deg_stirling2 or derangements.
        family: String,
        /// Poly index for poly_bell2 / deg_poly_bell2.
        #[arg(long, allow_hyphen_values = true)]
        k: Option<i64>,
    },
    /// OGF coefficients and EGF terms of a named generating function.
    Series {
        /// eq4, eq9, eq13, eq15, eq19, eq26, eq28, eq32, eq36 or eq40.
        expr: String,
        /// Poly index for eq36 / eq40.
        #[arg(long, allow_hyphen_values = true)]
        k: Option<i64>,
    },
    /// Check identities exactly; exits 2 if any check fails.
    Verify {
        /// Theorem ids (T1..T11, T6_as_printed, EQ20_22_chain, REDUCE_LAMBDA0,
        /// REDUCE_K1, REVERSION_DUALITY) or `all`. No ids means all.
        theorems: Vec<String>,
        /// Run every check.
        #[arg(long)]
        all: bool,
        /// Comma-separated theorem ids.
        #[arg(long = "ids", value_delimiter = ',')]
        ids: Vec<String>,
    },
    /// Time series composition or reversion algorithms against each other.
    Bench {
        /// compose or revert.
        workload: String,
        /// Timed repetitions per algorithm.
        #[arg(long, default_value_t = 5)]
        reps: usize,
    },
    /// Look a sequence up in the OEIS (advisory only).
    Oeis {
        /// Comma-separated integers, at least four after the transform.
        #[arg(long, required = true, value_delimiter = ',', allow_hyphen_values = true)]
        terms: Vec<String>,
        /// none, unsigned or shift.
        #[arg(long, default_value = "none")]
        transform: String,
        /// Query oeis.org (or the configured endpoint) instead of fixtures.
        #[arg(long)]
        live: bool,
    },
}

fn parse_format(s: &str) -> Result<Format, String> {
    s.parse().map_err(|e: crate::error::CliError| e.to_string())
}

fn parse_rational(s: &str) -> Result<ExactRational, String> {
    s.trim()
        .parse()
        .map_err(|_| format!("`{s}` is not an exact rational P/Q"))
}

/// `A..B` and `A..=B` are both inclusive; a bare `A` means `A..=A`.
pub fn parse_k_range(s: &str) -> Result<RangeInclusive<i64>, String> {
    let int = |t: &str| {
        t.trim()
            .parse::<i64>()
            .map_err(|_| format!("`{s}` is not a range A..B of integers"))
    };
    match s.split_once("..") {
        Some((a, b)) => {
            let b = b.strip_prefix('=').unwrap_or(b);
            Ok(int(a)?..=int(b)?)
        }
        None => {
            let a = int(s)?;
            Ok(a..=a)
        }
    }
}
