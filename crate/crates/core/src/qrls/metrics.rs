use super::{ColMatrix, UpperTri};
use crate::cfield::Scalar;
use crate::parexec::tree::ReductionTree;
use crate::xreal::Real;
use crate::Error;

fn fold_max<R: Real>(acc: R, v: R) -> R {
    // NaN wins so that a broken factorization is never reported as accurate
    if v.to_f64().is_nan() || v > acc {
        v
    } else {
        acc
    }
}

/// `max_ij |a_ij - sum_{l <= j} q_il r_lj|`, in working precision.
pub fn residual_max_entry<S: Scalar>(
    a: &ColMatrix<S>,
    q: &ColMatrix<S>,
    r: &UpperTri<S>,
) -> Result<S::Real, Error> {
    let (m, n) = (a.rows(), a.cols());
    if q.rows() != m || q.cols() != n || r.dim() != n {
        return Err(Error::Dimension(format!(
            "A is {m}x{n}, Q is {}x{}, R is {}x{}",
            q.rows(),
            q.cols(),
            r.dim(),
            r.dim()
        )));
    }
    let mut max = S::Real::ZERO;
    for j in 0..n {
        let rcol = r.col(j);
        for i in 0..m {
            let mut s = S::ZERO;
            for (l, &rl) in rcol.iter().enumerate() {
                s += q.get(i, l) * rl;
            }
            max = fold_max(max, (a.get(i, j) - s).modulus());
        }
    }
    Ok(max)
}

/// `max_ij |(Q^H Q - I)_ij|`.
pub fn orthogonality_defect<S: Scalar>(q: &ColMatrix<S>) -> S::Real {
    let (m, n) = (q.rows(), q.cols());
    let tree = ReductionTree::new(m);
    let mut scratch = vec![S::ZERO; m];
    let mut max = S::Real::ZERO;
    for i in 0..n {
        for j in 0..n {
            let mut g = tree.inner_product(q.col(i), q.col(j), &mut scratch);
            if i == j {
                g -= S::ONE;
            }
            max = fold_max(max, g.modulus());
        }
    }
    max
}
