use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};

#[derive(Debug, Parser)]
#[command(name = "fairspan", version, about = "Fair scheduling mechanisms with payments")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Family {
    Lb32,
    GoodsLb,
    Uniform,
    NormalizedUniform,
}

impl Family {
    pub fn name(self) -> &'static str {
        match self {
            Family::Lb32 => "lb32",
            Family::GoodsLb => "goods-lb",
            Family::Uniform => "uniform",
            Family::NormalizedUniform => "normalized-uniform",
        }
    }

    pub fn is_random(self) -> bool {
        matches!(self, Family::Uniform | Family::NormalizedUniform)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum KindArg {
    Chores,
    Goods,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Mechanism {
    AntiDiagonal,
    Cyclic,
    NormalizedOpt,
    GoodsNormalizedOpt,
}

impl Mechanism {
    pub fn name(self) -> &'static str {
        match self {
            Mechanism::AntiDiagonal => "anti-diagonal",
            Mechanism::Cyclic => "cyclic",
            Mechanism::NormalizedOpt => "normalized-opt",
            Mechanism::GoodsNormalizedOpt => "goods-normalized-opt",
        }
    }
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Write an instance file.
    Gen {
        family: Family,
        #[arg(long)]
        m: usize,
        #[arg(long)]
        n: usize,
        /// Lower-bound parameter for lb32.
        #[arg(long, default_value = "1/2")]
        eps: String,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Kind for the random families.
        #[arg(long, value_enum, default_value = "chores")]
        kind: KindArg,
        #[arg(long, default_value_t = fairspan_core::generators::DEFAULT_DENOMINATOR)]
        denominator: u32,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run a mechanism and certify its output.
    Run {
        mechanism: Mechanism,
        instance: PathBuf,
        /// Input allocation as 1-based labels ("1,2,2") or "opt".
        #[arg(long)]
        base_allocation: Option<String>,
        #[arg(long)]
        eps: Option<String>,
        /// Also compute the optimum and report ratios against it.
        #[arg(long)]
        with_opt: bool,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Certify a given allocation (and optional payments).
    Check {
        instance: PathBuf,
        #[arg(long)]
        allocation: String,
        #[arg(long, allow_hyphen_values = true)]
        payments: Option<String>,
        #[arg(long, default_value = "1")]
        alpha: String,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run every applicable mechanism over a parameter grid and write CSV.
    Sweep {
        family: Family,
        #[arg(long, default_value = "2")]
        m: String,
        #[arg(long, default_value = "2")]
        n: String,
        #[arg(long, default_value = "1/2")]
        eps: String,
        #[arg(long, default_value_t = 1)]
        trials: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, value_enum, default_value = "chores")]
        kind: KindArg,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}
