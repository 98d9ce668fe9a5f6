use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use green_core::Normalization;

#[derive(Debug, Parser)]
#[command(name = "green", version, about = "Green functions of Weyl groups from coinvariant data")]
pub struct Cli {
    /// Directory for cached character tables and Ω matrices.
    #[arg(long, env = "GREEN_CACHE_DIR", global = true)]
    pub cache_dir: Option<PathBuf>,

    /// Neither read nor write the cache.
    #[arg(long, global = true)]
    pub no_cache: bool,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Write the group and Springer data files for the symmetric group S_n.
    GenA {
        #[arg(long)]
        n: usize,
        /// Output directory.
        #[arg(long, default_value = ".")]
        out: PathBuf,
    },
    /// Build the Ω matrix of a group.
    Omega {
        #[command(flatten)]
        input: Input,
        #[command(flatten)]
        output: Output,
    },
    /// Solve for P and Λ, verify the result and export it.
    Solve {
        #[command(flatten)]
        input: Input,
        #[command(flatten)]
        output: Output,
        /// Defaults to lusztig_plain for json and double_prime for csv and latex.
        #[arg(long)]
        normalization: Option<Normalization>,
        /// Seed for the choice of linear extension of the closure order.
        #[arg(long)]
        seed: Option<u64>,
    },
    /// Graded Ext dimensions between pairs of irreducibles.
    Ext {
        #[command(flatten)]
        input: Input,
        #[command(flatten)]
        output: Output,
        /// Restrict to this row label.
        #[arg(long)]
        chi: Option<String>,
        /// Restrict to this column label.
        #[arg(long)]
        psi: Option<String>,
    },
    /// Fake degrees of every irreducible.
    FakeDegrees {
        #[command(flatten)]
        input: Input,
        #[command(flatten)]
        output: Output,
    },
    /// Check a solution file against Ω.
    Verify {
        /// Solution file to check.
        #[arg(long)]
        solution: PathBuf,
        /// Ω file; rebuilt from the group when absent.
        #[arg(long, conflicts_with_all = ["n", "group"])]
        omega: Option<PathBuf>,
        #[command(flatten)]
        input: Input,
    },
    /// Cross-check S_n against the independent oracles.
    Oracle {
        #[arg(long)]
        n: usize,
        /// Seeds for the uniqueness check (at least two).
        #[arg(long, value_delimiter = ',', default_values_t = green_oracle::DEFAULT_SEEDS)]
        seeds: Vec<u64>,
    },
    /// Run every invariant and oracle check for S_n.
    Check {
        #[arg(long)]
        n: usize,
    },
}

/// Where the group and Springer data come from.
#[derive(Debug, Clone, Args)]
pub struct Input {
    /// Use the generated data for the symmetric group S_n.
    #[arg(long, conflicts_with_all = ["group", "springer"])]
    pub n: Option<usize>,
    /// Group datum file.
    #[arg(long)]
    pub group: Option<PathBuf>,
    /// Springer datum file.
    #[arg(long, requires = "group")]
    pub springer: Option<PathBuf>,
}

#[derive(Debug, Clone, Args)]
pub struct Output {
    /// Write here instead of standard output.
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    pub format: Format,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Latex,
}
