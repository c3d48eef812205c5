use std::panic::{catch_unwind, AssertUnwindSafe};
use std::str::FromStr;
use std::sync::atomic::{AtomicUsize, Ordering};
use std::time::Duration;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use rayon::{ThreadPool, ThreadPoolBuilder};

use super::tree::ReductionTree;
use crate::cfield::{CVector, Scalar};
use crate::qrls::mgs::{breakdown_threshold, check_shape, normalize, remove};
use crate::qrls::{check_system, lsq_with, solve_pivot, update};
use crate::qrls::{ColMatrix, LsqSolution, QrFactors, UpperTri};
use crate::Error;

/// Environment variable that overrides the default worker count.
pub const WORKERS_ENV: &str = "MGSQD_WORKERS";

/// Worker count from [`WORKERS_ENV`], else the available hardware threads.
pub fn default_workers() -> usize {
    std::env::var(WORKERS_ENV)
        .ok()
        .and_then(|v| v.trim().parse::<usize>().ok())
        .filter(|&w| w > 0)
        .unwrap_or_else(|| std::thread::available_parallelism().map_or(1, |n| n.get()))
}

/// Who normalizes the pivot column in each round.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum Normalization {
    /// One task normalizes `a_k` before the update tasks start.
    #[default]
    Designated,
    /// Every update task normalizes its own copy of `a_k`; the coordinator
    /// stores the normalized column once the round is over.
    Redundant,
}

impl FromStr for Normalization {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "designated" => Ok(Normalization::Designated),
            "redundant" => Ok(Normalization::Redundant),
            _ => Err(format!(
                "unknown normalization `{s}` (expected designated or redundant)"
            )),
        }
    }
}

/// Random sleeps and yields inside tasks, to shake out ordering bugs.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Jitter {
    pub seed: u64,
    pub max_micros: u64,
}

impl Jitter {
    fn pause(&self, round: usize, task: usize) {
        let mut rng = ChaCha8Rng::seed_from_u64(self.seed);
        rng.set_stream(((round as u64) << 32) | task as u64);
        match rng.random_range(0..3) {
            0 => std::thread::yield_now(),
            1 => std::thread::sleep(Duration::from_micros(rng.random_range(0..=self.max_micros))),
            _ => {}
        }
    }
}

/// What the executor observed while factoring.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ExecTrace {
    /// Update tasks launched in each barrier-separated round.
    pub tasks_per_round: Vec<usize>,
    /// Normalizations performed, counting redundant ones.
    pub normalizations: usize,
    /// Largest scratch buffer any task held, in entries.
    pub max_task_scratch: usize,
    /// Tasks that ran outside their round.
    pub barrier_violations: usize,
}

struct RoundGuard {
    epoch: AtomicUsize,
    finished: AtomicUsize,
    violations: AtomicUsize,
    normalizations: AtomicUsize,
    max_scratch: AtomicUsize,
}

impl RoundGuard {
    fn new() -> Self {
        Self {
            epoch: AtomicUsize::new(0),
            finished: AtomicUsize::new(0),
            violations: AtomicUsize::new(0),
            normalizations: AtomicUsize::new(0),
            max_scratch: AtomicUsize::new(0),
        }
    }

    fn enter(&self, round: usize) {
        if self.epoch.load(Ordering::SeqCst) != round {
            self.violations.fetch_add(1, Ordering::SeqCst);
        }
    }

    fn leave(&self, round: usize) {
        if self.epoch.load(Ordering::SeqCst) != round {
            self.violations.fetch_add(1, Ordering::SeqCst);
        }
        self.finished.fetch_add(1, Ordering::SeqCst);
    }

    /// Closes `round` after `expected` tasks and opens the next one.
    fn advance(&self, round: usize, expected: usize) {
        if self.finished.swap(0, Ordering::SeqCst) != expected {
            self.violations.fetch_add(1, Ordering::SeqCst);
        }
        self.epoch.store(round + 1, Ordering::SeqCst);
    }
}

/// Fork-join executor for the factorization and the triangular solve.
pub struct Executor {
    pool: ThreadPool,
    workers: usize,
    normalization: Normalization,
    jitter: Option<Jitter>,
}

impl Executor {
    pub fn new(workers: usize) -> Result<Self, Error> {
        if workers == 0 {
            return Err(Error::Config("worker count must be positive".into()));
        }
        let pool = ThreadPoolBuilder::new()
            .num_threads(workers)
            .thread_name(|i| format!("mgs-worker-{i}"))
            .build()
            .map_err(|e| Error::Exec(e.to_string()))?;
        Ok(Self {
            pool,
            workers,
            normalization: Normalization::default(),
            jitter: None,
        })
    }

    pub fn with_normalization(mut self, mode: Normalization) -> Self {
        self.normalization = mode;
        self
    }

    pub fn with_jitter(mut self, jitter: Jitter) -> Self {
        self.jitter = Some(jitter);
        self
    }

    pub fn workers(&self) -> usize {
        self.workers
    }

    pub fn normalization(&self) -> Normalization {
        self.normalization
    }

    /// Runs `f` on the pool, turning a worker panic into an error.
    fn run<T: Send>(&self, f: impl FnOnce() -> Result<T, Error> + Send) -> Result<T, Error> {
        catch_unwind(AssertUnwindSafe(|| self.pool.install(f)))
            .unwrap_or_else(|_| Err(Error::Exec("a worker panicked".into())))
    }

    pub fn par_mgs_qr<S: Scalar>(&self, a: &ColMatrix<S>) -> Result<QrFactors<S>, Error> {
        self.par_mgs_qr_traced(a).map(|(f, _)| f)
    }

    pub fn par_mgs_qr_traced<S: Scalar>(
        &self,
        a: &ColMatrix<S>,
    ) -> Result<(QrFactors<S>, ExecTrace), Error> {
        check_shape(a.rows(), a.cols())?;
        let threshold = breakdown_threshold(a)?;
        let mut q = a.clone();
        let mut r = UpperTri::zeros(a.cols());
        let trace = self.factor_in_place(&mut q, &mut r, threshold)?;
        Ok((QrFactors { q, r }, trace))
    }

    /// Parallel counterpart of the sequential in-place factorization.
    fn factor_in_place<S: Scalar>(
        &self,
        a: &mut ColMatrix<S>,
        r: &mut UpperTri<S>,
        threshold: f64,
    ) -> Result<ExecTrace, Error> {
        let (m, n) = (a.rows(), a.cols());
        let tree = ReductionTree::new(m);
        let guard = RoundGuard::new();
        let mut trace = ExecTrace::default();
        let data = a.as_mut_slice();

        for k in 0..n {
            let (head, tail) = data.split_at_mut((k + 1) * m);
            let qk = &mut head[k * m..];
            let tasks = n - 1 - k;

            if tasks == 0 || self.normalization == Normalization::Designated {
                let rkk = self.run(|| {
                    let mut scratch = vec![S::ZERO; m];
                    guard.normalizations.fetch_add(1, Ordering::SeqCst);
                    normalize(k, qk, &mut scratch, &tree, threshold)
                })?;
                r.set(k, k, S::from_real(rkk));
                if tasks == 0 {
                    break;
                }
            }

            let pivot: &[S] = qk;
            let redundant = self.normalization == Normalization::Redundant;
            let jitter = self.jitter;
            let guard_ref = &guard;
            let tree_ref = &tree;
            let rk = self.run(|| {
                tail.par_chunks_mut(m)
                    .enumerate()
                    .map_init(
                        || vec![S::ZERO; 3 * m],
                        |scratch, (off, aj)| {
                            guard_ref.enter(k);
                            guard_ref
                                .max_scratch
                                .fetch_max(scratch.len(), Ordering::SeqCst);
                            if let Some(j) = jitter {
                                j.pause(k, off);
                            }
                            let (qbuf, rest) = scratch.split_at_mut(m);
                            let (abuf, pbuf) = rest.split_at_mut(m);
                            qbuf.copy_from_slice(pivot);
                            if redundant {
                                guard_ref.normalizations.fetch_add(1, Ordering::SeqCst);
                                normalize(k, qbuf, pbuf, tree_ref, threshold)?;
                            }
                            abuf.copy_from_slice(aj);
                            let rkj = remove(qbuf, abuf, pbuf, tree_ref);
                            aj.copy_from_slice(abuf);
                            guard_ref.leave(k);
                            Ok(rkj)
                        },
                    )
                    .collect::<Result<Vec<S>, Error>>()
            })?;
            guard.advance(k, tasks);
            trace.tasks_per_round.push(tasks);

            if redundant {
                let mut scratch = vec![S::ZERO; m];
                guard.normalizations.fetch_add(1, Ordering::SeqCst);
                let rkk = normalize(k, qk, &mut scratch, &tree, threshold)?;
                r.set(k, k, S::from_real(rkk));
            }
            for (off, v) in rk.into_iter().enumerate() {
                r.set(k, k + 1 + off, v);
            }
        }

        trace.normalizations = guard.normalizations.load(Ordering::SeqCst);
        trace.max_task_scratch = guard.max_scratch.load(Ordering::SeqCst);
        trace.barrier_violations = guard.violations.load(Ordering::SeqCst);
        Ok(trace)
    }

    /// Column-oriented back substitution: the division for `x_k` is one
    /// task, the updates of `y_1..y_(k-1)` are split across workers.
    pub fn par_back_substitute<S: Scalar>(
        &self,
        r: &UpperTri<S>,
        y: &[S],
    ) -> Result<CVector<S>, Error> {
        check_system(r, y)?;
        let n = r.dim();
        let mut y = y.to_vec();
        let mut x = CVector::zeros(n);
        let chunk = n.div_ceil(self.workers).max(8);
        for k in (0..n).rev() {
            let rcol = r.col(k);
            let yk = y[k];
            x[k] = self.run(|| solve_pivot(k, yk, rcol[k]))?;
            let xk = x[k];
            let ys = &mut y[..k];
            self.run(|| {
                ys.par_chunks_mut(chunk)
                    .zip(rcol[..k].par_chunks(chunk))
                    .for_each(|(yc, rc)| update(yc, rc, xk));
                Ok(())
            })?;
        }
        Ok(x)
    }

    pub fn par_lsq_solve<S: Scalar>(
        &self,
        a: &ColMatrix<S>,
        b: &[S],
    ) -> Result<LsqSolution<S>, Error> {
        lsq_with(
            a,
            b,
            |ab, r, t| self.factor_in_place(ab, r, t).map(|_| ()),
            |r, y| self.par_back_substitute(r, y),
        )
    }
}
