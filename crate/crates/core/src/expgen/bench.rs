use std::hint::black_box;
use std::time::Instant;

use super::config::WARMUP_RUNS;
use super::gen::{gen_matrix, trial_rng};
use super::ExperimentConfig;
use crate::cfield::{ModulusDist, Scalar};
use crate::parexec::Executor;
use crate::precision::PrecisionVisitor;
use crate::qrls::mgs_qr;
use crate::{Error, Precision};

/// One timing row.
#[derive(Clone, Debug, PartialEq)]
pub struct BenchRecord {
    /// `overhead`, `scaling`, `speedup-seq` or `speedup-par`.
    pub kind: String,
    pub precision: Precision,
    pub m: usize,
    pub n: usize,
    pub reps: usize,
    pub wall_seconds: f64,
    /// Overhead: time over the real-double time. Scaling: time over the
    /// previous grid point. Speedup: parallel time over sequential time.
    pub factor_vs_baseline: Option<f64>,
}

/// Wall time of `reps` factorizations of one random `m x n` matrix after
/// the warm-up runs; sequential when `workers` is `None`.
pub fn time_factorizations<S: Scalar>(
    m: usize,
    n: usize,
    reps: usize,
    seed: u64,
    workers: Option<usize>,
) -> Result<f64, Error> {
    let mut rng = trial_rng(seed, 0);
    let a = gen_matrix::<S>(&mut rng, m, n, 1.0, ModulusDist::Log)?;
    let exec = workers.map(Executor::new).transpose()?;
    let run = |a: &_| match &exec {
        Some(e) => e.par_mgs_qr(a),
        None => mgs_qr(a),
    };
    for _ in 0..WARMUP_RUNS {
        black_box(run(black_box(&a))?);
    }
    let start = Instant::now();
    for _ in 0..reps {
        black_box(run(black_box(&a))?);
    }
    Ok(start.elapsed().as_secs_f64())
}

struct Timing {
    m: usize,
    n: usize,
    reps: usize,
    seed: u64,
    workers: Option<usize>,
}

impl PrecisionVisitor for Timing {
    type Output = Result<f64, Error>;

    fn visit<S: Scalar>(self) -> Self::Output {
        time_factorizations::<S>(self.m, self.n, self.reps, self.seed, self.workers)
    }
}

fn time(
    p: Precision,
    m: usize,
    n: usize,
    reps: usize,
    seed: u64,
    workers: Option<usize>,
) -> Result<f64, Error> {
    p.dispatch(Timing {
        m,
        n,
        reps,
        seed,
        workers,
    })
}

/// Times every precision against the real-double baseline, which is always
/// measured first.
pub fn run_overhead_bench(cfg: &ExperimentConfig) -> Result<Vec<BenchRecord>, Error> {
    cfg.validate()?;
    if cfg.repetitions == 0 {
        return Ok(Vec::new());
    }
    let mut precisions = vec![Precision::D];
    precisions.extend(cfg.precisions.iter().filter(|&&p| p != Precision::D));
    let mut out = Vec::new();
    for &n in &cfg.n_grid {
        let m = cfg.rows_for(n);
        let mut base = None;
        for &p in &precisions {
            let t = time(p, m, n, cfg.repetitions, cfg.seed, None)?;
            let b = *base.get_or_insert(t);
            out.push(BenchRecord {
                kind: "overhead".into(),
                precision: p,
                m,
                n,
                reps: cfg.repetitions,
                wall_seconds: t,
                factor_vs_baseline: Some(t / b),
            });
        }
    }
    Ok(out)
}

/// Times each grid dimension; the factor is the ratio to the previous one.
pub fn run_scaling_bench(cfg: &ExperimentConfig) -> Result<Vec<BenchRecord>, Error> {
    cfg.validate()?;
    if cfg.repetitions == 0 {
        return Ok(Vec::new());
    }
    let mut out = Vec::new();
    for &p in &cfg.precisions {
        let mut prev: Option<f64> = None;
        for &n in &cfg.n_grid {
            let m = cfg.rows_for(n);
            let t = time(p, m, n, cfg.repetitions, cfg.seed, None)?;
            out.push(BenchRecord {
                kind: "scaling".into(),
                precision: p,
                m,
                n,
                reps: cfg.repetitions,
                wall_seconds: t,
                factor_vs_baseline: prev.map(|q| t / q),
            });
            prev = Some(t);
        }
    }
    Ok(out)
}

/// Sequential and parallel timings per dimension, in that order.
pub fn run_speedup_bench(cfg: &ExperimentConfig) -> Result<Vec<BenchRecord>, Error> {
    cfg.validate()?;
    if cfg.repetitions == 0 {
        return Ok(Vec::new());
    }
    let mut out = Vec::new();
    for &p in &cfg.precisions {
        for &n in &cfg.n_grid {
            let m = cfg.rows_for(n);
            let seq = time(p, m, n, cfg.repetitions, cfg.seed, None)?;
            let par = time(p, m, n, cfg.repetitions, cfg.seed, Some(cfg.workers))?;
            for (kind, t, f) in [
                ("speedup-seq", seq, None),
                ("speedup-par", par, Some(par / seq)),
            ] {
                out.push(BenchRecord {
                    kind: kind.into(),
                    precision: p,
                    m,
                    n,
                    reps: cfg.repetitions,
                    wall_seconds: t,
                    factor_vs_baseline: f,
                });
            }
        }
    }
    Ok(out)
}

/// Dimension at which double-precision work matches the cost of one
/// dimension-`n` factorization that is `factor` times as expensive.
pub fn recalibrated_dimension(n: f64, factor: f64) -> f64 {
    n * factor.cbrt()
}

/// `t(n_(i+1)) / t(n_i)` along a scaling run of one precision.
pub fn scaling_ratios(records: &[BenchRecord]) -> Vec<(usize, usize, f64)> {
    records
        .windows(2)
        .filter(|w| w[0].precision == w[1].precision)
        .map(|w| (w[0].n, w[1].n, w[1].wall_seconds / w[0].wall_seconds))
        .collect()
}
