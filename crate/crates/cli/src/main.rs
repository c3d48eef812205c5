//! `mgsqd`: factor matrix files and run the accuracy and timing experiments.

mod commands;
mod output;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use mgsqd::cfield::ModulusDist;
use mgsqd::parexec::{Normalization, WORKERS_ENV};
use mgsqd::Precision;

use output::Failure;

#[derive(Parser, Debug)]
#[command(
    name = "mgsqd",
    version,
    about = "Modified Gram-Schmidt QR in multiprecision complex arithmetic"
)]
struct Cli {
    /// Worker threads; defaults to the available hardware threads.
    #[arg(long, global = true, env = WORKERS_ENV, value_parser = positive)]
    workers: Option<usize>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Factor a matrix file and report the residual and orthogonality defect.
    Qr(QrArgs),
    /// Least squares solution of A x = b.
    Solve(SolveArgs),
    /// Accuracy sweep over magnitude ranges, as CSV.
    Accuracy(AccuracyArgs),
    /// Cost of each precision relative to real double, as CSV.
    BenchOverhead(BenchArgs),
    /// Time growth over a dimension grid, as CSV.
    BenchScaling(BenchArgs),
    /// Sequential against parallel timings, as CSV.
    BenchSpeedup(BenchArgs),
}

#[derive(Args, Debug)]
struct FactorOpts {
    /// Working precision; defaults to the precision stored in the file.
    #[arg(long)]
    precision: Option<Precision>,

    /// Who normalizes the pivot column in parallel runs.
    #[arg(long, default_value = "designated")]
    normalization: Normalization,
}

#[derive(Args, Debug)]
struct QrArgs {
    matrix: PathBuf,

    #[command(flatten)]
    opts: FactorOpts,

    /// Write Q and R to `<OUT>.q` and `<OUT>.r`.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct SolveArgs {
    matrix: PathBuf,
    /// Right-hand side, an `m x 1` matrix file.
    rhs: PathBuf,

    #[command(flatten)]
    opts: FactorOpts,

    /// Write x here instead of standard output.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct ExperimentOpts {
    /// Comma-separated precisions.
    #[arg(long, value_delimiter = ',')]
    precision: Vec<Precision>,

    /// Comma-separated column counts, strictly increasing.
    #[arg(long, value_delimiter = ',')]
    n: Vec<usize>,

    /// Row count; square matrices when absent.
    #[arg(long)]
    m: Option<usize>,

    #[arg(long, default_value_t = 0)]
    seed: u64,

    /// Trial and repetition counts of the full-size study.
    #[arg(long)]
    paper_scale: bool,

    /// Write the CSV atomically to this path.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct AccuracyArgs {
    #[command(flatten)]
    common: ExperimentOpts,

    /// Comma-separated magnitude ranges.
    #[arg(
        long,
        value_delimiter = ',',
        default_value = "1",
        allow_negative_numbers = true
    )]
    g: Vec<f64>,

    #[arg(long, conflicts_with = "paper_scale")]
    trials: Option<usize>,

    #[arg(long, default_value = "log")]
    modulus_dist: ModulusDist,
}

#[derive(Args, Debug)]
struct BenchArgs {
    #[command(flatten)]
    common: ExperimentOpts,

    /// Timed factorizations per point.
    #[arg(long, conflicts_with = "paper_scale")]
    reps: Option<usize>,
}

fn positive(s: &str) -> Result<usize, String> {
    match s.trim().parse::<usize>() {
        Ok(0) => Err("must be at least 1".into()),
        Ok(n) => Ok(n),
        Err(_) => Err(format!("`{s}` is not a positive integer")),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => return output::clap_failure(e),
    };
    match commands::run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => f.report(),
    }
}

impl From<mgsqd::Error> for Failure {
    fn from(e: mgsqd::Error) -> Self {
        Failure::Lib(e)
    }
}
