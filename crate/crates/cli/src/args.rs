use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use derangement_core::numtheory::Variant;
use serde::Serialize;

#[derive(Debug, Parser, Serialize)]
#[command(name = "derangements", version, about = "Verification runs for derangement proportions of S_n and A_n")]
pub struct Cli {
    #[command(flatten)]
    #[serde(flatten)]
    pub global: GlobalOptions,
    #[command(subcommand)]
    #[serde(flatten)]
    pub command: Command,
}

#[derive(Debug, Args, Serialize)]
pub struct GlobalOptions {
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    pub format: Format,
    /// Append output to this file instead of writing to stdout.
    #[arg(long, global = true)]
    pub output: Option<PathBuf>,
    /// Worker threads; 0 picks one per core. Output does not depend on it.
    #[arg(long, default_value_t = 0, global = true)]
    #[serde(skip)]
    pub jobs: usize,
    /// Record wall-clock time in each report.
    #[arg(long, global = true)]
    pub timing: bool,
    /// Seed for randomized experiments.
    #[arg(long, default_value_t = 0, global = true)]
    pub seed: u64,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Text,
    Records,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum VariantArg {
    Sym,
    Alt,
}

impl From<VariantArg> for Variant {
    fn from(v: VariantArg) -> Self {
        match v {
            VariantArg::Sym => Variant::Symmetric,
            VariantArg::Alt => Variant::Alternating,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum IngestCheck {
    Divisibility,
    AltProportion,
}

#[derive(Debug, Subcommand, Serialize)]
#[serde(tag = "command", rename_all = "kebab-case")]
pub enum Command {
    /// D_n, E_n, their proportions and reduced denominators.
    Table {
        #[arg(long)]
        max_n: u64,
    },
    /// Only S_n has a coset attaining D_n/n! (exhaustive, n <= 7).
    VerifySym {
        #[arg(long)]
        n: usize,
    },
    /// Classes with a coset attaining E_n/n!, compared with the published list (n <= 7).
    VerifyAlt {
        #[arg(long)]
        n: usize,
    },
    /// Witness primes ruling out imprimitive (and optionally intransitive) groups.
    Witness {
        #[arg(long)]
        n: u64,
        #[arg(long, value_enum)]
        variant: VariantArg,
        /// List every factorization n = k*l instead of the first.
        #[arg(long)]
        all_factorizations: bool,
        /// Also cover every split n = u + v.
        #[arg(long)]
        intransitive: bool,
    },
    /// Largest degree for which the primitive-case inequality holds.
    Cutoff {
        #[arg(long, value_enum)]
        variant: VariantArg,
    },
    /// Reduced denominators against 4^n.
    DenBound {
        #[arg(long, value_enum)]
        variant: VariantArg,
        /// Last degree checked; defaults to the end of the stated range.
        #[arg(long)]
        upper: Option<u64>,
    },
    /// Distance from 1/e to fractions with small numerator.
    NumeratorFloor {
        #[arg(long, value_enum)]
        variant: VariantArg,
        #[arg(long, default_value_t = 4)]
        cap: u64,
    },
    /// Exhaustive exponent scan of an exponential Diophantine equation.
    Diophantine {
        /// 1: 3^u = 2^v - 1, 2: 3^a - 5^b = 2.
        #[arg(long, value_parser = clap::value_parser!(u8).range(1..=2))]
        kind: u8,
        #[arg(long, default_value_t = 64)]
        bound: u32,
    },
    /// Primes p in (n/2, n] with p not dividing E_n.
    HalfRange {
        #[arg(long, default_value_t = 7)]
        from: u64,
        #[arg(long, default_value_t = 30)]
        to: u64,
    },
    /// Validate a group dataset file and run a check on its groups.
    Ingest {
        #[arg(long)]
        file: PathBuf,
        #[arg(long, value_enum)]
        check: IngestCheck,
    },
    /// Value sets of random monic polynomials over F_q.
    Ffield {
        #[arg(long)]
        q: u64,
        #[arg(long)]
        n: u64,
        #[arg(long, default_value_t = 200)]
        trials: usize,
        /// Band constant K in |deviation| <= K / sqrt(q); a rational a/b is accepted.
        #[arg(long, default_value = "3")]
        band: String,
    },
}

impl Command {
    pub fn name(&self) -> &'static str {
        match self {
            Command::Table { .. } => "table",
            Command::VerifySym { .. } => "verify-sym",
            Command::VerifyAlt { .. } => "verify-alt",
            Command::Witness { .. } => "witness",
            Command::Cutoff { .. } => "cutoff",
            Command::DenBound { .. } => "den-bound",
            Command::NumeratorFloor { .. } => "numerator-floor",
            Command::Diophantine { .. } => "diophantine",
            Command::HalfRange { .. } => "half-range",
            Command::Ingest { .. } => "ingest",
            Command::Ffield { .. } => "ffield",
        }
    }
}
