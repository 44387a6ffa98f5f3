use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Debug, Parser)]
#[command(
    name = "nilab",
    version,
    about = "Exact checks on invariant gradient fields and normalizer indices"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Run the gradient-field identity suites for one algebra.
    Verify(CommonArgs),
    /// Run the index pipeline for one nilpotent orbit.
    Index(CommonArgs),
    /// Sweep every orbit of every algebra of a family up to a matrix size.
    Table(CommonArgs),
    /// Print the triangular decomposition built from the principal triplet.
    Decompose(CommonArgs),
    /// Print the convolution coefficients and the constant audit for one orbit.
    Convolution(CommonArgs),
}

impl Command {
    pub fn name(&self) -> &'static str {
        match self {
            Command::Verify(_) => "verify",
            Command::Index(_) => "index",
            Command::Table(_) => "table",
            Command::Decompose(_) => "decompose",
            Command::Convolution(_) => "convolution",
        }
    }

    pub fn args(&self) -> &CommonArgs {
        match self {
            Command::Verify(a)
            | Command::Index(a)
            | Command::Table(a)
            | Command::Decompose(a)
            | Command::Convolution(a) => a,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

#[derive(Debug, Args)]
pub struct CommonArgs {
    /// Cartan family: A, B, C or D.
    #[arg(long)]
    pub family: String,
    /// Rank of the algebra.
    #[arg(long, conflicts_with = "n")]
    pub rank: Option<usize>,
    /// Matrix size of the natural representation; for `table`, the largest size swept.
    #[arg(long)]
    pub n: Option<usize>,
    /// Jordan type of the nilpotent, e.g. 3,2,2. Defaults to the principal orbit.
    #[arg(long)]
    pub partition: Option<String>,
    /// Random samples per generator in the identity suites.
    #[arg(long, default_value_t = 20, value_parser = clap::value_parser!(u64).range(1..))]
    pub samples: u64,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    /// Write here instead of standard output.
    #[arg(long)]
    pub output: Option<PathBuf>,
}
