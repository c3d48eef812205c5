use std::ffi::OsString;
use std::path::{Path, PathBuf};

use mgsqd::cfield::Scalar;
use mgsqd::expgen::{
    accuracy_csv, bench_csv, run_accuracy_sweep, run_overhead_bench, run_scaling_bench,
    run_speedup_bench, ExperimentConfig, Kind, DEFAULT_REPETITIONS, DEFAULT_TRIALS,
    PAPER_REPETITIONS, PAPER_TRIALS,
};
use mgsqd::parexec::{default_workers, Executor, Normalization};
use mgsqd::precision::PrecisionVisitor;
use mgsqd::qrls::io::{read_header, read_matrix, write_matrix, write_upper};
use mgsqd::qrls::{lsq_solve, mgs_qr, orthogonality_defect, residual_max_entry, ColMatrix};
use mgsqd::xreal::Real;
use mgsqd::{Error, Precision};

use crate::output::{emit, read_input, write_atomic, Failure};
use crate::{AccuracyArgs, BenchArgs, Cli, Command, ExperimentOpts, QrArgs, SolveArgs};

pub fn run(cli: Cli) -> Result<(), Failure> {
    let workers = cli.workers.unwrap_or_else(default_workers);
    match cli.command {
        Command::Qr(a) => qr(a, workers),
        Command::Solve(a) => solve(a, workers),
        Command::Accuracy(a) => accuracy(a, workers),
        Command::BenchOverhead(a) => bench(a, Kind::Overhead, workers),
        Command::BenchScaling(a) => bench(a, Kind::Scaling, workers),
        Command::BenchSpeedup(a) => bench(a, Kind::Speedup, workers),
    }
}

fn file_precision(text: &str) -> Result<Precision, Failure> {
    let header = text.lines().find(|l| !l.trim().is_empty()).unwrap_or("");
    Ok(read_header(header)?.2)
}

fn with_suffix(path: &Path, suffix: &str) -> PathBuf {
    let mut s = OsString::from(path.as_os_str());
    s.push(suffix);
    PathBuf::from(s)
}

fn executor(workers: usize, mode: Normalization) -> Result<Option<Executor>, Error> {
    if workers == 1 {
        Ok(None)
    } else {
        Ok(Some(Executor::new(workers)?.with_normalization(mode)))
    }
}

fn qr(args: QrArgs, workers: usize) -> Result<(), Failure> {
    let text = read_input(&args.matrix)?;
    let precision = args.opts.precision.unwrap_or(file_precision(&text)?);
    precision.dispatch(QrJob {
        text: &text,
        workers,
        mode: args.opts.normalization,
        out: args.out.as_deref(),
    })
}

struct QrJob<'a> {
    text: &'a str,
    workers: usize,
    mode: Normalization,
    out: Option<&'a Path>,
}

impl PrecisionVisitor for QrJob<'_> {
    type Output = Result<(), Failure>;

    fn visit<S: Scalar>(self) -> Self::Output {
        let a = read_matrix::<S>(self.text)?;
        let f = match executor(self.workers, self.mode)? {
            Some(e) => e.par_mgs_qr(&a)?,
            None => mgs_qr(&a)?,
        };
        if let Some(out) = self.out {
            write_atomic(&with_suffix(out, ".q"), &write_matrix(&f.q))?;
            write_atomic(&with_suffix(out, ".r"), &write_upper(&f.r))?;
        }
        let e = residual_max_entry(&a, &f.q, &f.r)?.to_f64();
        let o = orthogonality_defect(&f.q).to_f64();
        println!("precision {}", S::NAME);
        println!("residual_max_entry {e:e}");
        println!("orthogonality_defect {o:e}");
        Ok(())
    }
}

fn solve(args: SolveArgs, workers: usize) -> Result<(), Failure> {
    let a = read_input(&args.matrix)?;
    let b = read_input(&args.rhs)?;
    let precision = match args.opts.precision {
        Some(p) => p,
        None => file_precision(&a)?.max(file_precision(&b)?),
    };
    precision.dispatch(SolveJob {
        a: &a,
        b: &b,
        workers,
        mode: args.opts.normalization,
        out: args.out.as_deref(),
    })
}

struct SolveJob<'a> {
    a: &'a str,
    b: &'a str,
    workers: usize,
    mode: Normalization,
    out: Option<&'a Path>,
}

impl PrecisionVisitor for SolveJob<'_> {
    type Output = Result<(), Failure>;

    fn visit<S: Scalar>(self) -> Self::Output {
        let a = read_matrix::<S>(self.a)?;
        let b = read_matrix::<S>(self.b)?;
        if b.cols() != 1 || b.rows() != a.rows() {
            return Err(Error::Dimension(format!(
                "right-hand side must be {}x1, got {}x{}",
                a.rows(),
                b.rows(),
                b.cols()
            ))
            .into());
        }
        let s = match executor(self.workers, self.mode)? {
            Some(e) => e.par_lsq_solve(&a, b.col(0))?,
            None => lsq_solve(&a, b.col(0))?,
        };
        let x = ColMatrix::from_col_major(s.x.len(), 1, s.x.to_vec())?;
        let z = s.residual_norm.to_f64();
        emit(self.out, &write_matrix(&x))?;
        if self.out.is_some() {
            println!("residual_norm {z:e}");
        } else {
            eprintln!("residual_norm {z:e}");
        }
        Ok(())
    }
}

fn config(
    kind: Kind,
    c: &ExperimentOpts,
    default_p: &[Precision],
    default_n: &[usize],
    workers: usize,
) -> ExperimentConfig {
    let mut cfg = ExperimentConfig::new(kind);
    cfg.precisions = if c.precision.is_empty() {
        default_p.to_vec()
    } else {
        c.precision.clone()
    };
    cfg.n_grid = if c.n.is_empty() {
        default_n.to_vec()
    } else {
        c.n.clone()
    };
    cfg.m = c.m;
    cfg.seed = c.seed;
    cfg.workers = workers;
    cfg
}

fn accuracy(args: AccuracyArgs, workers: usize) -> Result<(), Failure> {
    let c = &args.common;
    let mut cfg = config(Kind::Accuracy, c, &[Precision::Cd], &[32], workers);
    cfg.g_grid = args.g;
    cfg.dist = args.modulus_dist;
    cfg.trials = match (args.trials, c.paper_scale) {
        (Some(t), _) => t,
        (None, true) => PAPER_TRIALS,
        (None, false) => DEFAULT_TRIALS,
    };
    let records = run_accuracy_sweep(&cfg)?;
    emit(c.out.as_deref(), &accuracy_csv(&records))
}

fn bench(args: BenchArgs, kind: Kind, workers: usize) -> Result<(), Failure> {
    let c = &args.common;
    let (precisions, grid): (&[Precision], &[usize]) = match kind {
        Kind::Overhead => (&[Precision::Cd, Precision::Cdd, Precision::Cqd], &[32]),
        Kind::Scaling => (&[Precision::Cd], &[16, 32, 64, 128, 256]),
        _ => (&[Precision::D], &[256]),
    };
    let mut cfg = config(kind, c, precisions, grid, workers);
    cfg.repetitions = match (args.reps, c.paper_scale) {
        (Some(r), _) => r,
        (None, true) => PAPER_REPETITIONS,
        (None, false) => DEFAULT_REPETITIONS,
    };
    let records = match kind {
        Kind::Overhead => run_overhead_bench(&cfg)?,
        Kind::Scaling => run_scaling_bench(&cfg)?,
        _ => run_speedup_bench(&cfg)?,
    };
    emit(c.out.as_deref(), &bench_csv(&records))
}
