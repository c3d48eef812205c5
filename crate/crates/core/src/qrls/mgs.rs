use super::{ColMatrix, QrFactors, UpperTri};
use crate::cfield::Scalar;
use crate::parexec::tree::ReductionTree;
use crate::xreal::Real;
use crate::Error;

/// `m * eps * max_j ||a_j||`; pivots below it count as breakdown.
pub(crate) fn breakdown_threshold<S: Scalar>(a: &ColMatrix<S>) -> Result<f64, Error> {
    let m = a.rows();
    let tree = ReductionTree::new(m);
    let mut scratch = vec![S::ZERO; m];
    let mut max = 0.0f64;
    for j in 0..a.cols() {
        let col = a.col(j);
        if !col.iter().all(|x| x.is_finite()) {
            return Err(Error::Dimension(format!(
                "column {} has a non-finite entry",
                j + 1
            )));
        }
        let norm = tree
            .inner_product(col, col, &mut scratch)
            .re()
            .to_f64()
            .sqrt();
        if !norm.is_finite() {
            return Err(Error::Overflow { column: j + 1 });
        }
        max = max.max(norm);
    }
    Ok(m as f64 * S::Real::EPS * max)
}

pub(crate) fn check_shape(m: usize, n: usize) -> Result<(), Error> {
    if n == 0 || m < n {
        return Err(Error::Dimension(format!(
            "factorization needs m >= n >= 1, got {m}x{n}"
        )));
    }
    Ok(())
}

/// `r_kk = sqrt(a_k^H a_k)`, then `q_k = a_k / r_kk` in place. `k` is
/// zero-based; errors report it one-based.
#[inline]
pub(crate) fn normalize<S: Scalar>(
    k: usize,
    col: &mut [S],
    scratch: &mut [S],
    tree: &ReductionTree,
    threshold: f64,
) -> Result<S::Real, Error> {
    let r = tree.inner_product(col, col, scratch).re().sqrt();
    if !r.is_finite() {
        return Err(Error::Overflow { column: k + 1 });
    }
    let pivot = r.to_f64();
    if pivot <= 0.0 || pivot < threshold {
        return Err(Error::Breakdown {
            column: k + 1,
            pivot,
            threshold,
        });
    }
    for x in col.iter_mut() {
        *x = x.div_real(r);
    }
    Ok(r)
}

/// `r_kj = q_k^H a_j`, then `a_j := a_j - r_kj q_k` in place.
#[inline]
pub(crate) fn remove<S: Scalar>(
    qk: &[S],
    aj: &mut [S],
    scratch: &mut [S],
    tree: &ReductionTree,
) -> S {
    let r = tree.inner_product(qk, aj, scratch);
    for (a, &q) in aj.iter_mut().zip(qk) {
        *a -= r * q;
    }
    r
}

/// Overwrites `a` with `Q` and fills `r`. On error the factors hold the
/// state reached when the failing column was normalized.
pub(crate) fn mgs_in_place<S: Scalar>(
    a: &mut ColMatrix<S>,
    r: &mut UpperTri<S>,
    threshold: f64,
) -> Result<(), Error> {
    let (m, n) = (a.rows(), a.cols());
    let tree = ReductionTree::new(m);
    let mut scratch = vec![S::ZERO; m];
    let data = a.as_mut_slice();
    for k in 0..n {
        let (head, tail) = data.split_at_mut((k + 1) * m);
        let qk = &mut head[k * m..];
        let rkk = normalize(k, qk, &mut scratch, &tree, threshold)?;
        r.set(k, k, S::from_real(rkk));
        for (off, aj) in tail.chunks_exact_mut(m).enumerate() {
            r.set(k, k + 1 + off, remove(qk, aj, &mut scratch, &tree));
        }
    }
    Ok(())
}

/// Modified Gram-Schmidt QR without pivoting.
pub fn mgs_qr<S: Scalar>(a: &ColMatrix<S>) -> Result<QrFactors<S>, Error> {
    check_shape(a.rows(), a.cols())?;
    let threshold = breakdown_threshold(a)?;
    let mut q = a.clone();
    let mut r = UpperTri::zeros(a.cols());
    mgs_in_place(&mut q, &mut r, threshold)?;
    Ok(QrFactors { q, r })
}
