use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

/// Exact Chebyshev-ball volumes, Omega_d(x), identity checks and code bounds.
#[derive(Debug, Parser)]
#[command(name = "permcode", version)]
pub struct Cli {
    #[command(flatten)]
    pub config: ConfigArgs,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct ConfigArgs {
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Table, global = true)]
    pub format: Format,

    /// Append-only CSV cache of volumes (`d,n,volume`).
    #[arg(long, env = "PERMCODE_CACHE", global = true)]
    pub cache: Option<PathBuf>,

    /// Worker threads for the parallel engines. Output does not depend on it.
    #[arg(long, global = true, value_parser = clap::value_parser!(u64).range(1..))]
    pub workers: Option<u64>,

    /// Maximum number of terms a brute-force oracle may visit.
    #[arg(long, default_value_t = permcode::DEFAULT_ENUMERATION_BUDGET, global = true,
          value_parser = clap::value_parser!(u64).range(1..))]
    pub budget: u64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Table,
    Json,
    Csv,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Family {
    /// A^(d,n): ones where |i - j| <= d.
    Band,
    /// B^(d,n): band with doubled corners, line sums 2d + 1.
    Klove,
    /// A_{d,x}: the d x 2d matrix whose permanent is Omega_d(x).
    Omega,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum EngineArg {
    Dp,
    Ryser,
    Enumerate,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Method {
    Greedy,
    Exact,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum OrderArg {
    Lex,
    Revlex,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Print one of the structured matrix families.
    Matrix {
        #[arg(long, value_enum)]
        family: Family,
        #[arg(long)]
        d: usize,
        /// Order of the square families (band, klove).
        #[arg(long)]
        n: Option<usize>,
        /// Substitute x (integer or p/q) into the omega family.
        #[arg(long)]
        x: Option<String>,
    },
    /// Exact ball volume V(d, n).
    Volume {
        #[arg(long)]
        d: usize,
        #[arg(long)]
        n: usize,
        #[arg(long, value_enum, conflicts_with = "all_engines")]
        engine: Option<EngineArg>,
        /// Run every engine and print one line each.
        #[arg(long)]
        all_engines: bool,
    },
    /// Omega_d(x): closed form, coefficients or exact value.
    Omega {
        #[arg(long)]
        d: u32,
        /// Evaluate exactly at an integer or p/q.
        #[arg(long)]
        x: Option<String>,
        /// Print the coefficient list, low to high.
        #[arg(long)]
        poly: bool,
        /// Use Omega_d(x + 1) instead of Omega_d(x).
        #[arg(long)]
        shifted: bool,
    },
    /// Exact identity sweeps; exit status 0 only if every identity holds.
    Verify {
        #[command(subcommand)]
        which: Verify,
    },
    /// Log-space lower bounds on V(d, n).
    Bounds {
        #[arg(long)]
        d: u32,
        #[arg(long)]
        n: u64,
        /// Also compute V(d, n) exactly.
        #[arg(long)]
        exact: bool,
    },
    /// Smallest n where the refined bound beats the original one.
    Crossover {
        #[arg(long)]
        d: u32,
        #[arg(long)]
        n_max: u64,
    },
    /// GV floor and sphere-packing ceiling for codes of length n, distance D.
    Codebounds {
        #[arg(long)]
        n: u64,
        #[arg(long)]
        dist: u64,
    },
    /// Search for a permutation code of minimum distance D in S_n.
    CodeSearch {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        dist: u32,
        #[arg(long, value_enum, default_value_t = Method::Greedy)]
        method: Method,
        #[arg(long, value_enum, default_value_t = OrderArg::Lex)]
        order: OrderArg,
        /// List the codewords.
        #[arg(long)]
        words: bool,
    },
}

#[derive(Debug, Subcommand)]
pub enum Verify {
    /// Closed form of Omega_d(x) against the permanent of A_{d,x}.
    Conjecture {
        #[arg(long)]
        max_d: u32,
    },
    /// The multiple chain sum against its binomial closed form.
    Lemma {
        #[arg(long)]
        max_m: u32,
        #[arg(long)]
        max_n: u32,
    },
    /// The single inductive summation step.
    Telescoping {
        #[arg(long)]
        max_i: u32,
        #[arg(long)]
        max_n: u32,
    },
    /// Selection-pattern counts b_m against their closed form.
    Bm {
        #[arg(long)]
        max_d: u32,
    },
}
