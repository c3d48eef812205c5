//! Sequential modified Gram-Schmidt, least squares and residual metrics.
//!
//! This is the reference path: the parallel executor reuses the column
//! kernels defined here and must reproduce these results bit for bit.

mod backsub;
pub mod io;
mod lsq;
mod matrix;
mod metrics;
pub(crate) mod mgs;

pub use backsub::back_substitute;
pub(crate) use backsub::{check_system, solve_pivot, update};
pub use lsq::lsq_solve;
pub(crate) use lsq::lsq_with;
pub use matrix::{ColMatrix, LsqSolution, QrFactors, UpperTri};
pub use metrics::{orthogonality_defect, residual_max_entry};
pub use mgs::mgs_qr;
