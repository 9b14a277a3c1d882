//! `capot`: batch front end for density-constrained transport problems.
//!
//! Exit codes: 0 success (for `certify`: a non-separability witness on every
//! component), 1 error, 2 infeasible problem (`solve`), 3 separable fit found
//! (`certify`).

mod commands;
mod files;
mod report;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

pub const EXIT_OK: u8 = 0;
pub const EXIT_ERROR: u8 = 1;
pub const EXIT_INFEASIBLE: u8 = 2;
pub const EXIT_SEPARABLE: u8 = 3;

#[derive(Parser)]
#[command(
    name = "capot",
    version,
    about = "Exact density-constrained optimal transport on grids"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Solve a problem exactly; write the plan CSV and a JSON report.
    Solve(SolveArgs),
    /// Decide whether the cost is separable on the support.
    Certify(CertifyArgs),
    /// Inspect a given plan: interior set, optimality, uniqueness.
    Analyze(AnalyzeArgs),
    /// Interior-set profile of a builtin family under grid refinement.
    Refine(RefineArgs),
    /// Generate and verify boundary examples.
    Counterexample {
        #[command(subcommand)]
        kind: CounterexampleKind,
    },
}

#[derive(Args)]
pub struct SolveArgs {
    pub problem: PathBuf,
    /// Plan CSV destination.
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Report JSON destination; printed to stdout when omitted.
    #[arg(long)]
    pub report: Option<PathBuf>,
    /// Directory for plan.csv and report.json when no explicit paths are given.
    #[arg(long)]
    pub out_dir: Option<PathBuf>,
    /// Bound the uniqueness probe to cycles with at most this many rows.
    #[arg(long)]
    pub max_n: Option<usize>,
}

#[derive(Args)]
pub struct CertifyArgs {
    pub problem: PathBuf,
    /// `from-eta` or a CSV of `i,j` cells.
    #[arg(long, default_value = "from-eta")]
    pub support: String,
    /// Longest alternating cycle (rows) in the explicit scan.
    #[arg(long, default_value_t = 2)]
    pub max_n: usize,
    /// Test every rectangle instead of a seeded sample.
    #[arg(long)]
    pub exhaustive: bool,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Rectangles drawn in sampled mode.
    #[arg(long, default_value_t = 10_000)]
    pub samples: usize,
    #[arg(long)]
    pub report: Option<PathBuf>,
    #[arg(long)]
    pub out_dir: Option<PathBuf>,
}

#[derive(Args)]
pub struct AnalyzeArgs {
    pub problem: PathBuf,
    #[arg(long)]
    pub plan: PathBuf,
    #[arg(long)]
    pub probe_uniqueness: bool,
    /// Bound cycle searches to at most this many rows.
    #[arg(long)]
    pub max_n: Option<usize>,
    /// Margin for the ε-interior set, in (0, 1/2).
    #[arg(long, default_value = "1/1000000")]
    pub epsilon: String,
    #[arg(long)]
    pub report: Option<PathBuf>,
    #[arg(long)]
    pub out_dir: Option<PathBuf>,
}

#[derive(Args)]
pub struct RefineArgs {
    /// Builtin cost: neg_product, sq_distance or abs_distance.
    #[arg(long)]
    pub cost: String,
    #[arg(long)]
    pub phi: String,
    /// Comma-separated grid sizes.
    #[arg(long, value_delimiter = ',', required = true)]
    pub grids: Vec<usize>,
    /// CSV destination; printed to stdout when omitted.
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long)]
    pub out_dir: Option<PathBuf>,
}

#[derive(Subcommand)]
pub enum CounterexampleKind {
    /// Self-similar reference measure on which short cycles balance.
    Fractal(FractalArgs),
    /// Two optimal plans for a separable cost.
    Degenerate(DegenerateArgs),
}

#[derive(Args)]
pub struct FractalArgs {
    /// Digit base N ≥ 2.
    #[arg(long = "N", short = 'N')]
    pub base: usize,
    /// Depth K ≥ 1.
    #[arg(long = "K", short = 'K')]
    pub depth: usize,
    /// Constant density bound for the emitted problem.
    #[arg(long, default_value = "1")]
    pub phi: String,
    /// Check the three claims exhaustively.
    #[arg(long)]
    pub verify: bool,
    /// Additionally scan all cycles with at most this many rows.
    #[arg(long)]
    pub max_n: Option<usize>,
    #[arg(long)]
    pub out_dir: Option<PathBuf>,
}

#[derive(Args)]
pub struct DegenerateArgs {
    #[arg(long, default_value = "separable-2x2")]
    pub preset: String,
    #[arg(long)]
    pub out_dir: Option<PathBuf>,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Solve(args) => commands::solve_cmd(&args),
        Command::Certify(args) => commands::certify(&args),
        Command::Analyze(args) => commands::analyze(&args),
        Command::Refine(args) => commands::refine(&args),
        Command::Counterexample { kind } => match kind {
            CounterexampleKind::Fractal(args) => commands::fractal(&args),
            CounterexampleKind::Degenerate(args) => commands::degenerate(&args),
        },
    };
    match result {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(EXIT_ERROR)
        }
    }
}
