use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Parser, Debug)]
#[command(
    name = "permstat",
    version,
    about = "Permutation statistics for interleaver design"
)]
pub struct Cli {
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    pub format: Format,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Text,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Stat {
    Disp,
    SPlus,
    SStar,
}

#[derive(Args, Debug)]
#[group(required = true, multiple = false)]
pub struct PermInput {
    /// Permutation in one-line notation, e.g. "2 4 1 3".
    #[arg(long)]
    pub perm: Option<String>,
    /// File holding one permutation, with an optional "n=" header.
    #[arg(long)]
    pub input: Option<PathBuf>,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Every per-permutation statistic.
    Metrics {
        #[command(flatten)]
        input: PermInput,
    },
    /// Closed-form maxima and the permutations attaining them.
    Extremal {
        #[arg(long = "n")]
        n: usize,
        #[arg(long, value_enum)]
        stat: Stat,
    },
    /// A permutation with prescribed normalized displacement.
    Construct {
        #[arg(long = "n")]
        n: usize,
        /// Target in [0, 1/2], as a decimal or "p/q".
        #[arg(long)]
        displacement: String,
    },
    /// Check every closed form against exhaustive enumeration.
    Verify {
        #[arg(long, default_value_t = 8)]
        max_n: usize,
        /// Permit --max-n 10 or 11.
        #[arg(long)]
        allow_large: bool,
    },
    /// Monte Carlo report for the displacement of uniform permutations.
    Sample {
        #[arg(long = "n")]
        n: usize,
        #[arg(long, default_value_t = 10_000)]
        trials: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, value_delimiter = ',', default_values_t = [0.02, 0.1, 0.3, 0.5])]
        epsilons: Vec<f64>,
    },
    /// Apply improvement steps until none applies, printing the trajectory.
    Improve {
        #[command(flatten)]
        input: PermInput,
        /// Run only the displacement (disp) or cycle (s-star) improvement.
        #[arg(long, value_enum)]
        stat: Option<Stat>,
    },
}
