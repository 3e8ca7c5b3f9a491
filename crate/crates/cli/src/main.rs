//! `mahler`: expand, compile and classify Mahler-equation power series from the shell.

mod commands;

use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, Subcommand)]
pub enum Command {
    /// Parse a spec and check its seeds and residual through `--n` coefficients.
    Validate,
    /// Print `n, a_n` for the first `--n` coefficients.
    Coeffs,
    /// Print `n, h(a_n)` for the first `--n` coefficients.
    Heights,
    /// Run both classification routes and print the report.
    Classify,
    /// Print the minimal linear representation used by `classify`.
    Compile,
    /// Analyze the digit-matrix semigroup of a representation file.
    Semigroup,
    /// Classify the whole built-in catalog.
    Zoo,
}

/// Every flag can also be set through an environment variable with the `MAHLER_` prefix.
#[derive(Debug, Parser)]
#[command(name = "mahler", version, about)]
pub struct RunConfig {
    #[command(subcommand)]
    pub command: Command,
    /// Spec file (JSON); a representation file for `semigroup`.
    #[arg(long, global = true, env = "MAHLER_INPUT", conflicts_with = "zoo")]
    pub input: Option<std::path::PathBuf>,
    /// Built-in catalog entry.
    #[arg(long, global = true, env = "MAHLER_ZOO")]
    pub zoo: Option<String>,
    /// Number of coefficients.
    #[arg(long, global = true, env = "MAHLER_N", default_value_t = 4096, value_parser = clap::value_parser!(u64).range(1..))]
    pub n: u64,
    #[arg(long, global = true, env = "MAHLER_CLOSURE_CAP", default_value_t = mahler::semigroup::DEFAULT_CLOSURE_CAP as u64, value_parser = clap::value_parser!(u64).range(1..))]
    pub closure_cap: u64,
    #[arg(long, global = true, env = "MAHLER_DEPTH_CAP", default_value_t = mahler::semigroup::DEFAULT_DEPTH_CAP as u64, value_parser = clap::value_parser!(u64).range(1..))]
    pub depth_cap: u64,
    /// Bit cap for root-modulus separation.
    #[arg(long, global = true, env = "MAHLER_PRECISION_BITS", default_value_t = mahler::algebra::modulus::DEFAULT_PRECISION_BITS, value_parser = clap::value_parser!(u32).range(16..))]
    pub precision_bits: u32,
    /// Spread threshold of the empirical fit.
    #[arg(long, global = true, env = "MAHLER_TAU", default_value_t = mahler::classify::DEFAULT_TAU)]
    pub tau: f64,
    /// Exit 2 when the routes disagree and 3 when the semigroup verdict is inconclusive.
    #[arg(long, global = true, env = "MAHLER_STRICT")]
    pub strict: bool,
    #[arg(long, global = true, env = "MAHLER_FORMAT", value_enum, default_value_t = Format::Json)]
    pub format: Format,
}

fn main() -> ExitCode {
    let config = RunConfig::parse();
    ExitCode::from(commands::run(&config))
}
