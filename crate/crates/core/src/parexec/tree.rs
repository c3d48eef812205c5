use crate::cfield::Scalar;

/// Pairwise summation schedule over `m` leaves.
///
/// The leaves are padded with zeros to the next power of two and each level
/// adds adjacent pairs, `s[i] = s[2i] + s[2i+1]`, for `ceil(log2 m)` levels.
/// The padding is never materialized: a leaf paired with padding is added to
/// an explicit zero, and pairs of padding are skipped since they stay zero.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ReductionTree {
    leaves: usize,
}

impl ReductionTree {
    pub fn new(leaves: usize) -> Self {
        Self { leaves }
    }

    pub fn leaves(&self) -> usize {
        self.leaves
    }

    pub fn padded_len(&self) -> usize {
        self.leaves.max(1).next_power_of_two()
    }

    pub fn levels(&self) -> u32 {
        self.padded_len().trailing_zeros()
    }

    /// Folds `buf` (one entry per leaf) in place and returns the sum.
    #[inline]
    pub fn reduce<S: Scalar>(&self, buf: &mut [S]) -> S {
        debug_assert_eq!(buf.len(), self.leaves);
        let mut len = buf.len();
        if len == 0 {
            return S::ZERO;
        }
        while len > 1 {
            let half = len / 2;
            for i in 0..half {
                buf[i] = buf[2 * i] + buf[2 * i + 1];
            }
            if len % 2 == 1 {
                buf[half] = buf[len - 1] + S::ZERO;
                len = half + 1;
            } else {
                len = half;
            }
        }
        buf[0]
    }

    /// Stage one forms `conj(x_l) * y_l` in `scratch`; stage two folds it.
    #[inline]
    pub fn inner_product<S: Scalar>(&self, x: &[S], y: &[S], scratch: &mut [S]) -> S {
        let m = self.leaves;
        let scratch = &mut scratch[..m];
        for ((s, &a), &b) in scratch.iter_mut().zip(&x[..m]).zip(&y[..m]) {
            *s = a.conj() * b;
        }
        self.reduce(scratch)
    }
}
