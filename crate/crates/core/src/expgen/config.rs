use std::fmt;
use std::str::FromStr;

use crate::cfield::random::check_range;
use crate::cfield::ModulusDist;
use crate::{Error, Precision};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Kind {
    Accuracy,
    Overhead,
    Scaling,
    Speedup,
}

impl Kind {
    pub fn token(self) -> &'static str {
        match self {
            Kind::Accuracy => "accuracy",
            Kind::Overhead => "overhead",
            Kind::Scaling => "scaling",
            Kind::Speedup => "speedup",
        }
    }
}

impl fmt::Display for Kind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.token())
    }
}

impl FromStr for Kind {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "accuracy" => Ok(Kind::Accuracy),
            "overhead" => Ok(Kind::Overhead),
            "scaling" => Ok(Kind::Scaling),
            "speedup" => Ok(Kind::Speedup),
            _ => Err(format!("unknown experiment kind `{s}`")),
        }
    }
}

pub const DEFAULT_TRIALS: usize = 100;
pub const PAPER_TRIALS: usize = 1_000;
pub const DEFAULT_REPETITIONS: usize = 100;
pub const PAPER_REPETITIONS: usize = 10_000;
/// Untimed runs before every timing.
pub const WARMUP_RUNS: usize = 3;

#[derive(Clone, Debug, PartialEq)]
pub struct ExperimentConfig {
    pub kind: Kind,
    pub precisions: Vec<Precision>,
    /// Row count; `None` makes every matrix square.
    pub m: Option<usize>,
    pub n_grid: Vec<usize>,
    pub g_grid: Vec<f64>,
    pub trials: usize,
    pub repetitions: usize,
    pub seed: u64,
    pub workers: usize,
    pub dist: ModulusDist,
}

impl ExperimentConfig {
    pub fn new(kind: Kind) -> Self {
        Self {
            kind,
            precisions: vec![Precision::Cd],
            m: None,
            n_grid: vec![32],
            g_grid: vec![1.0],
            trials: DEFAULT_TRIALS,
            repetitions: DEFAULT_REPETITIONS,
            seed: 0,
            workers: 1,
            dist: ModulusDist::Log,
        }
    }

    /// Trial and repetition counts of the original study.
    pub fn paper_scale(mut self) -> Self {
        self.trials = PAPER_TRIALS;
        self.repetitions = PAPER_REPETITIONS;
        self
    }

    pub fn rows_for(&self, n: usize) -> usize {
        self.m.unwrap_or(n)
    }

    pub fn validate(&self) -> Result<(), Error> {
        let bad = |msg: String| Err(Error::Config(msg));
        if self.precisions.is_empty() {
            return bad("no precision selected".into());
        }
        if self.n_grid.is_empty() {
            return bad("empty dimension grid".into());
        }
        if self.n_grid.windows(2).any(|w| w[0] >= w[1]) {
            return bad("dimension grid must be strictly increasing".into());
        }
        for &n in &self.n_grid {
            if n == 0 || self.rows_for(n) < n {
                return bad(format!(
                    "need m >= n >= 1, got m={} n={n}",
                    self.rows_for(n)
                ));
            }
        }
        if self.workers == 0 {
            return bad("worker count must be positive".into());
        }
        match self.kind {
            Kind::Accuracy => {
                if self.trials == 0 {
                    return bad("trials must be at least 1".into());
                }
                if self.g_grid.is_empty() {
                    return bad("empty magnitude grid".into());
                }
                for &g in &self.g_grid {
                    check_range(g)?;
                }
            }
            Kind::Overhead | Kind::Scaling | Kind::Speedup => {}
        }
        Ok(())
    }
}
