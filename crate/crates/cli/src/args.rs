use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use drsa_core::{Level, ReductKind, DEFAULT_BUDGET};

#[derive(Debug, Parser)]
#[command(name = "drsa", version, about = "Dominance-based rough approximations over decision tables")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,

    /// Output format.
    #[arg(long, global = true, value_enum, env = "DRSA_FORMAT", default_value = "json")]
    pub format: Format,

    /// Write the report here instead of standard output.
    #[arg(long, global = true)]
    pub output: Option<PathBuf>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Text,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum ModelName {
    Classical,
    Vc,
    Vp,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Dir {
    Up,
    Down,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum KindName {
    L,
    Lbeta,
    Hbeta,
}

impl From<KindName> for ReductKind {
    fn from(k: KindName) -> Self {
        match k {
            KindName::L => ReductKind::L,
            KindName::Lbeta => ReductKind::LBeta,
            KindName::Hbeta => ReductKind::HBeta,
        }
    }
}

#[derive(Debug, Args)]
pub struct TableArgs {
    /// Decision table in CSV form.
    #[arg(long)]
    pub input: PathBuf,

    /// Comma-separated criterion names, or "all".
    #[arg(long, default_value = "all")]
    pub set: String,
}

#[derive(Debug, Args)]
pub struct ModelArgs {
    #[arg(long, value_enum, default_value = "classical")]
    pub model: ModelName,

    /// Level for the downward side, as "p/q" or a decimal in (0, 1].
    #[arg(long)]
    pub l1: Option<Level>,

    /// Level for the upward side, as "p/q" or a decimal in (0, 1].
    #[arg(long)]
    pub l2: Option<Level>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Print the parsed table.
    Table {
        #[command(flatten)]
        table: TableArgs,
    },
    /// Print positive and negative dominance cones of every object.
    Cones {
        #[command(flatten)]
        table: TableArgs,
    },
    /// Approximate one class union.
    Approx {
        #[command(flatten)]
        table: TableArgs,
        #[command(flatten)]
        model: ModelArgs,
        #[arg(long)]
        rank: usize,
        #[arg(long, value_enum)]
        dir: Dir,
    },
    /// Consistency and precision measures of every object at one rank.
    Measures {
        #[command(flatten)]
        table: TableArgs,
        #[arg(long)]
        rank: usize,
    },
    /// Three region model of every class, or of one class with --rank.
    Trm {
        #[command(flatten)]
        table: TableArgs,
        #[command(flatten)]
        model: ModelArgs,
        #[arg(long)]
        rank: Option<usize>,
    },
    /// Four-region labels of class members, for one class or all.
    Regions4 {
        #[command(flatten)]
        table: TableArgs,
        #[arg(long)]
        rank: Option<usize>,
    },
    /// Enumerate reducts of one kind.
    Reducts {
        #[arg(long)]
        input: PathBuf,
        #[arg(long, value_enum)]
        kind: KindName,
        /// Largest criteria count accepted for exhaustive search.
        #[arg(long, default_value_t = DEFAULT_BUDGET)]
        budget: usize,
    },
    /// Compare Lβ/Hβ reducts with L-reducts on one table.
    CheckProposition {
        #[arg(long)]
        input: PathBuf,
        #[arg(long, default_value_t = DEFAULT_BUDGET)]
        budget: usize,
    },
    /// Run the identity suite on seeded random tables.
    Check {
        #[arg(long, default_value_t = 500)]
        tables: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Comma-separated level grid; defaults to 1/4,1/2,2/3,3/4,1.
        #[arg(long, value_delimiter = ',')]
        levels: Option<Vec<Level>>,
    },
    /// Run the identity suite and engine/oracle comparison on one table.
    OracleDiff {
        #[command(flatten)]
        table: TableArgs,
        #[arg(long, value_delimiter = ',')]
        levels: Option<Vec<Level>>,
    },
}
