use super::UpperTri;
use crate::cfield::{CVector, Scalar};
use crate::Error;

pub(crate) fn check_system<S: Scalar>(r: &UpperTri<S>, y: &[S]) -> Result<(), Error> {
    if y.len() != r.dim() {
        return Err(Error::Dimension(format!(
            "triangular system of order {} with {} right-hand entries",
            r.dim(),
            y.len()
        )));
    }
    for k in 0..r.dim() {
        if r.get(k, k) == S::ZERO {
            return Err(Error::ZeroDiagonal { index: k + 1 });
        }
    }
    Ok(())
}

/// `x_k = y_k / r_kk`; reports overflow one-based.
#[inline]
pub(crate) fn solve_pivot<S: Scalar>(k: usize, yk: S, rkk: S) -> Result<S, Error> {
    let x = yk.div(rkk);
    if x.is_finite() {
        Ok(x)
    } else {
        Err(Error::Overflow { column: k + 1 })
    }
}

/// `y_j := y_j - r_jk x_k` over a contiguous run of rows.
#[inline]
pub(crate) fn update<S: Scalar>(y: &mut [S], rcol: &[S], xk: S) {
    for (yj, &r) in y.iter_mut().zip(rcol) {
        *yj -= r * xk;
    }
}

/// Solves `Rx = y` column by column, last column first.
pub fn back_substitute<S: Scalar>(r: &UpperTri<S>, y: &[S]) -> Result<CVector<S>, Error> {
    check_system(r, y)?;
    let n = r.dim();
    let mut y = y.to_vec();
    let mut x = CVector::zeros(n);
    for k in (0..n).rev() {
        let rcol = r.col(k);
        x[k] = solve_pivot(k, y[k], rcol[k])?;
        update(&mut y[..k], &rcol[..k], x[k]);
    }
    Ok(x)
}
