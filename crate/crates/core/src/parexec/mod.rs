//! Deterministic multi-threaded MGS and back substitution.
//!
//! Each outer step `k` is one fork-join round: the pivot column is
//! normalized, then one task per remaining column computes `r_kj` and
//! updates `a_j`. Tasks own disjoint columns and share the pivot read-only,
//! and every inner product goes through the same [`tree::ReductionTree`] as
//! the sequential code, so results do not depend on the worker count.

mod executor;
pub mod tree;

pub use executor::{default_workers, ExecTrace, Executor, Jitter, Normalization, WORKERS_ENV};

use crate::cfield::{CVector, Scalar};
use crate::qrls::{ColMatrix, QrFactors, UpperTri};
use crate::Error;

pub fn par_mgs_qr<S: Scalar>(a: &ColMatrix<S>, workers: usize) -> Result<QrFactors<S>, Error> {
    Executor::new(workers)?.par_mgs_qr(a)
}

pub fn par_back_substitute<S: Scalar>(
    r: &UpperTri<S>,
    y: &[S],
    workers: usize,
) -> Result<CVector<S>, Error> {
    Executor::new(workers)?.par_back_substitute(r, y)
}
