//! Library side of the `sumquot` command-line tool: argument definitions,
//! input parsing, corpus generation, command dispatch and report rendering.
//! The binary is a thin wrapper around [`run`].

pub mod commands;
pub mod corpus;
pub mod input;
pub mod report;

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use sumquot::Rational;

pub use commands::{run, run_on, Outcome};
pub use report::{Format, Report};

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("input error: {0}")]
    Input(String),
    #[error("{0}")]
    Core(#[from] sumquot::Error),
    #[error("invariant violated: {0}")]
    Invariant(String),
}

impl CliError {
    /// 1 for bad input, 2 for a violated internal invariant.
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Input(_) => 1,
            CliError::Core(sumquot::Error::Invariant(_)) => 2,
            CliError::Core(_) => 1,
            CliError::Invariant(_) => 2,
        }
    }
}

fn parse_rational(s: &str) -> Result<Rational, String> {
    s.trim().parse().map_err(|e: sumquot::Error| e.to_string())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum FormatArg {
    Json,
    Csv,
    Text,
}

impl From<FormatArg> for Format {
    fn from(f: FormatArg) -> Self {
        match f {
            FormatArg::Json => Format::Json,
            FormatArg::Csv => Format::Csv,
            FormatArg::Text => Format::Text,
        }
    }
}

#[derive(Debug, Clone, Parser)]
#[command(
    name = "sumquot",
    version,
    about = "Exact bounds for the quotient set (A+A)/(A+A)"
)]
pub struct Cli {
    #[command(flatten)]
    pub global: GlobalArgs,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Args)]
pub struct GlobalArgs {
    /// Input file, one rational per line; standard input when absent.
    #[arg(long, global = true)]
    pub input: Option<PathBuf>,
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Worker threads; defaults to the machine's parallelism.
    #[arg(long, global = true)]
    pub threads: Option<usize>,
    #[arg(long, global = true, value_enum, default_value = "json")]
    pub format: FormatArg,
    #[arg(long = "override-M", global = true)]
    pub override_m: Option<usize>,
    #[arg(long = "override-N", global = true)]
    pub override_n: Option<usize>,
    #[arg(long = "c-M", global = true, value_parser = parse_rational)]
    pub c_m: Option<Rational>,
    #[arg(long = "c-N", global = true, value_parser = parse_rational)]
    pub c_n: Option<Rational>,
    #[arg(long = "C", global = true, value_parser = parse_rational)]
    pub big_c: Option<Rational>,
    #[arg(long = "C-prime", global = true, value_parser = parse_rational)]
    pub big_c_prime: Option<Rational>,
    /// Largest set for which the brute-force oracle is run.
    #[arg(long, global = true, default_value_t = 64)]
    pub max_n: usize,
    /// Record wall-clock time in `timing_ms` (otherwise 0, keeping reports
    /// byte-identical across runs).
    #[arg(long, global = true)]
    pub timing: bool,
}

#[derive(Debug, Clone, Subcommand)]
pub enum Command {
    /// Exact size of (A+A)/(A+A) and the ratio set.
    Oracle,
    /// Neighbour-line certificate of |A|^2 - 1 quotients.
    Born,
    /// Clustered certificate with its regime report.
    Certify,
    /// Exhaustive incidence checks for both curve families.
    CurvesVerify {
        /// Number of random L' instances to check as well.
        #[arg(long = "random-lprime", default_value_t = 0)]
        random_lprime: usize,
        /// Largest grid side for the random instances.
        #[arg(long, default_value_t = 12)]
        grid_side: usize,
    },
    /// Transversal cliques in multipartite graphs, e.g. `egt --tightness r=3 k=4`.
    Egt {
        #[arg(long, conflicts_with = "random")]
        tightness: bool,
        /// Random graph above the density threshold.
        #[arg(long)]
        random: bool,
        /// Sampler budget.
        #[arg(long, default_value_t = 10_000)]
        max_tries: u64,
        /// `r=<parts>` and `k=<part size>`.
        params: Vec<String>,
    },
    /// Generate a test set.
    Corpus {
        #[command(subcommand)]
        kind: CorpusKind,
        /// Also write the set to this file in input format.
        #[arg(long, global = true)]
        write: Option<PathBuf>,
    },
}

#[derive(Debug, Clone, Subcommand)]
pub enum CorpusKind {
    /// Arithmetic progression.
    Ap {
        #[arg(long, default_value = "1", value_parser = parse_rational)]
        start: Rational,
        #[arg(long, default_value = "1", value_parser = parse_rational)]
        step: Rational,
        #[arg(long)]
        n: usize,
    },
    /// Geometric progression.
    Gp {
        #[arg(long, default_value = "1", value_parser = parse_rational)]
        start: Rational,
        #[arg(long, default_value = "2", value_parser = parse_rational)]
        ratio: Rational,
        #[arg(long)]
        n: usize,
    },
    /// Distinct uniform integers from 1..=range, drawn with --seed.
    Random {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 100)]
        range: usize,
    },
}
