use std::time::Instant;

use rayon::prelude::*;

use super::gen::{gen_matrix, trial_rng};
use super::ExperimentConfig;
use crate::cfield::{ModulusDist, Scalar};
use crate::precision::PrecisionVisitor;
use crate::qrls::{mgs_qr, residual_max_entry};
use crate::xreal::Real;
use crate::{Error, Precision};

/// One grid point of an accuracy sweep.
#[derive(Clone, Debug, PartialEq)]
pub struct AccuracyRecord {
    pub precision: Precision,
    pub m: usize,
    pub n: usize,
    pub g: f64,
    /// Configured trial count; `log10_e.len() + exclusions` equals it.
    pub trials: usize,
    pub exclusions: usize,
    /// `log10 e` of every completed trial, in trial order.
    pub log10_e: Vec<f64>,
    /// `m_e`: least `log10 e`.
    pub min_log_e: f64,
    /// `M_e`: largest `log10 e`.
    pub max_log_e: f64,
    /// `D_e = m_e - M_e`, never positive.
    pub d_e: f64,
    pub wall_seconds: f64,
}

/// `(min, max, min - max)`; NaN when there is no data.
pub fn min_max_spread(values: &[f64]) -> (f64, f64, f64) {
    if values.is_empty() {
        return (f64::NAN, f64::NAN, f64::NAN);
    }
    let lo = values.iter().copied().fold(f64::INFINITY, f64::min);
    let hi = values.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    (lo, hi, lo - hi)
}

/// `log10 e` for one random factorization, `None` when it breaks down.
fn one_trial<S: Scalar>(
    seed: u64,
    trial: u64,
    m: usize,
    n: usize,
    g: f64,
    dist: ModulusDist,
) -> Result<Option<f64>, Error> {
    let mut rng = trial_rng(seed, trial);
    let a = gen_matrix::<S>(&mut rng, m, n, g, dist)?;
    match mgs_qr(&a) {
        Ok(f) => {
            let e = residual_max_entry(&a, &f.q, &f.r)?;
            Ok(Some(e.to_f64().log10()))
        }
        Err(Error::Breakdown { .. } | Error::Overflow { .. }) => Ok(None),
        Err(e) => Err(e),
    }
}

#[allow(clippy::too_many_arguments)]
pub fn accuracy_point<S: Scalar>(
    m: usize,
    n: usize,
    g: f64,
    trials: usize,
    seed: u64,
    dist: ModulusDist,
    workers: usize,
) -> Result<AccuracyRecord, Error> {
    let start = Instant::now();
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(workers.max(1))
        .build()
        .map_err(|e| Error::Exec(e.to_string()))?;
    let outcomes = pool.install(|| {
        (0..trials as u64)
            .into_par_iter()
            .map(|t| one_trial::<S>(seed, t, m, n, g, dist))
            .collect::<Result<Vec<_>, Error>>()
    })?;
    let log10_e: Vec<f64> = outcomes.iter().flatten().copied().collect();
    let (min_log_e, max_log_e, d_e) = min_max_spread(&log10_e);
    Ok(AccuracyRecord {
        precision: Precision::of::<S>(),
        m,
        n,
        g,
        trials,
        exclusions: trials - log10_e.len(),
        log10_e,
        min_log_e,
        max_log_e,
        d_e,
        wall_seconds: start.elapsed().as_secs_f64(),
    })
}

struct Point<'a> {
    cfg: &'a ExperimentConfig,
    n: usize,
    g: f64,
}

impl PrecisionVisitor for Point<'_> {
    type Output = Result<AccuracyRecord, Error>;

    fn visit<S: Scalar>(self) -> Self::Output {
        let c = self.cfg;
        accuracy_point::<S>(
            c.rows_for(self.n),
            self.n,
            self.g,
            c.trials,
            c.seed,
            c.dist,
            c.workers,
        )
    }
}

/// Every (precision, n, g) combination of the configuration.
pub fn run_accuracy_sweep(cfg: &ExperimentConfig) -> Result<Vec<AccuracyRecord>, Error> {
    cfg.validate()?;
    let mut out = Vec::new();
    for &p in &cfg.precisions {
        for &n in &cfg.n_grid {
            for &g in &cfg.g_grid {
                out.push(p.dispatch(Point { cfg, n, g })?);
            }
        }
    }
    Ok(out)
}
