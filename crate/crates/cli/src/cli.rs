use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::suite::DEFAULT_SEED;

#[derive(Debug, Parser)]
#[command(name = "cmc", version, about = "Exact Calogero-Moser and D-module computations on plane curves")]
pub struct Cli {
    #[command(flatten)]
    pub global: GlobalArgs,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Args)]
pub struct GlobalArgs {
    /// Input file (used when a subcommand takes no positional file).
    #[arg(long, global = true)]
    pub input: Option<PathBuf>,
    /// Output file, written atomically. Standard output when absent.
    #[arg(long, global = true)]
    pub output: Option<PathBuf>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    /// Seed for randomized configurations.
    #[arg(long, global = true, default_value_t = DEFAULT_SEED)]
    pub seed: u64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Text,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Plane curves.
    #[command(subcommand)]
    Curve(CurveCmd),
    /// Calogero-Moser matrix data.
    #[command(subcommand)]
    Cm(CmCmd),
    /// Fractional ideals and left-ideal presentations.
    #[command(subcommand)]
    Ideal(IdealCmd),
    /// Primary decomposable subspaces.
    #[command(subcommand)]
    Pd(PdCmd),
    /// Skew polynomial operators.
    #[command(subcommand)]
    Dmod(DmodCmd),
    /// The acceptance suite.
    #[command(subcommand)]
    Suite(SuiteCmd),
}

#[derive(Debug, Subcommand)]
pub enum CurveCmd {
    /// Tier and smoothness report; exit 1 for a singular curve.
    Check {
        file: Option<PathBuf>,
        /// Curve given inline: a polynomial, `hyperbola` or `elliptic`.
        #[arg(long)]
        curve: Option<String>,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Convention {
    Adopted,
    Transposed,
}

#[derive(Debug, Subcommand)]
pub enum CmCmd {
    /// Builds data from a configuration file or a seeded random configuration.
    Build {
        file: Option<PathBuf>,
        /// Number of random points (requires --curve).
        #[arg(long)]
        random: Option<usize>,
        #[arg(long)]
        curve: Option<String>,
        #[arg(long, value_enum, default_value_t = Convention::Adopted)]
        convention: Convention,
    },
    /// Checks the defining relations; exit 0 iff they hold.
    Verify { file: Option<PathBuf> },
    /// Applies the one-form `f dx + g dy`.
    Shift {
        file: Option<PathBuf>,
        /// `f,g`
        #[arg(long)]
        omega: String,
    },
}

#[derive(Debug, Subcommand)]
pub enum IdealCmd {
    /// Left-ideal generators from plane-curve data.
    Build {
        #[arg(long)]
        cm: Option<PathBuf>,
    },
    /// Lattice basis, inverse and dual basis of a fractional ideal.
    Inspect { file: Option<PathBuf> },
}

#[derive(Debug, Subcommand)]
pub enum PdCmd {
    /// Components, codimension identity and divisor; exit 1 if not primary
    /// decomposable.
    Analyze { file: Option<PathBuf> },
}

#[derive(Debug, Subcommand)]
pub enum DmodCmd {
    /// Normal-form product `a * b`.
    Mul {
        a: PathBuf,
        b: PathBuf,
        /// Curve for operator files that do not name one.
        #[arg(long)]
        curve: Option<String>,
    },
}

#[derive(Debug, Subcommand)]
pub enum SuiteCmd {
    /// Runs the acceptance criteria; exit 1 if any fails.
    Run {
        /// Restrict to these criterion numbers.
        #[arg(long, value_delimiter = ',')]
        only: Vec<u32>,
    },
}
