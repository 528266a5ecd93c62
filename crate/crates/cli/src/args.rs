use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use quadrisig::Form;

pub const EXPAND_MAX_P: u64 = 64;
pub const SWEEP_MAX_P: u64 = 10_000_000;

#[derive(Debug, Parser)]
#[command(
    name = "quadrisig",
    version,
    about = "Invariant polynomials and signature pairs for cyclic groups acting on the sphere and the hyperquadric"
)]
pub struct Cli {
    /// Worker threads for parallel stages (defaults to all cores).
    #[arg(long, global = true, env = "QUADRISIG_THREADS")]
    pub threads: Option<usize>,

    /// Write the result here instead of standard output.
    #[arg(long, short, global = true)]
    pub output: Option<PathBuf>,

    /// Lift the default size guards.
    #[arg(long, global = true)]
    pub force: bool,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct Triple {
    pub p: u64,
    pub q1: u64,
    pub q2: u64,
    /// u2 (sphere, definite) or u11 (hyperquadric, indefinite).
    #[arg(long, default_value = "u2")]
    pub form: Form,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Backend {
    /// Reference below p = 32, multi-modular above.
    Auto,
    Reference,
    Modular,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum TableFormat {
    Csv,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ReportFormat {
    Text,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ExampleName {
    /// The order-6 group with exponents (2, 3) on the sphere.
    Phi623,
    /// The order-2 group in U(1,1) and its CR map.
    Phi211,
    /// A two-cycle permutation for (24; 3, 16) and its traversal geometry.
    T24,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Expand the invariant polynomial exactly.
    Expand {
        #[command(flatten)]
        triple: Triple,
        #[arg(long, value_enum, default_value_t = Backend::Auto)]
        backend: Backend,
    },
    /// Count positive and negative coefficients without expanding.
    Signature {
        #[command(flatten)]
        triple: Triple,
    },
    /// Positivity ratios against their limits over a range of orders.
    Sweep {
        #[arg(long)]
        q1: u64,
        #[arg(long)]
        q2: u64,
        #[arg(long, default_value = "u2")]
        form: Form,
        #[arg(long)]
        p_min: u64,
        #[arg(long)]
        p_max: u64,
        #[arg(long, default_value_t = 1)]
        p_step: u64,
        #[arg(long, value_enum, default_value_t = TableFormat::Csv)]
        format: TableFormat,
    },
    /// Run every cross-check up to the given order; exits 1 on any failure.
    Verify {
        #[arg(long)]
        p_max: u64,
        #[arg(long, value_enum, default_value_t = ReportFormat::Text)]
        format: ReportFormat,
    },
    /// Build the explicit permutation with r q1-steps and s q2-steps.
    Witness {
        p: u64,
        q1: u64,
        q2: u64,
        r: u64,
        s: u64,
        #[arg(long, value_enum, default_value_t = ReportFormat::Json)]
        format: ReportFormat,
    },
    /// Print one of the worked examples.
    Example {
        #[arg(value_enum)]
        name: ExampleName,
    },
}
