use super::mgs::{breakdown_threshold, check_shape, mgs_in_place};
use super::{back_substitute, ColMatrix, LsqSolution, UpperTri};
use crate::cfield::{CVector, Scalar};
use crate::xreal::Real;
use crate::Error;

/// Factors `[A b]` with `factor` and back-substitutes with `solve`.
///
/// A breakdown in the appended column means `b` lies in the range of `A`:
/// the residual is zero and `y` is already complete.
pub(crate) fn lsq_with<S: Scalar>(
    a: &ColMatrix<S>,
    b: &[S],
    factor: impl FnOnce(&mut ColMatrix<S>, &mut UpperTri<S>, f64) -> Result<(), Error>,
    solve: impl FnOnce(&UpperTri<S>, &[S]) -> Result<CVector<S>, Error>,
) -> Result<LsqSolution<S>, Error> {
    let n = a.cols();
    check_shape(a.rows(), n)?;
    let mut ab = a.augmented(b)?;
    let threshold = breakdown_threshold(&ab)?;
    let mut r = UpperTri::zeros(n + 1);
    let z = match factor(&mut ab, &mut r, threshold) {
        Ok(()) => r.get(n, n).re(),
        Err(Error::Breakdown { column, .. }) if column == n + 1 => S::Real::ZERO,
        Err(e) => return Err(e),
    };
    let y = &r.col(n)[..n];
    let x = solve(&r.leading(n), y)?;
    Ok(LsqSolution {
        x,
        residual_norm: z,
    })
}

/// Minimizes `||b - Ax||` through the QR factorization of `[A b]`.
pub fn lsq_solve<S: Scalar>(a: &ColMatrix<S>, b: &[S]) -> Result<LsqSolution<S>, Error> {
    lsq_with(a, b, mgs_in_place, back_substitute)
}
