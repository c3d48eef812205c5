use crate::cfield::{CVector, Scalar};
use crate::Error;

/// Dense `m x n` matrix stored column by column.
#[derive(Clone, Debug, PartialEq)]
pub struct ColMatrix<S> {
    m: usize,
    n: usize,
    data: Vec<S>,
}

impl<S: Scalar> ColMatrix<S> {
    pub fn zeros(m: usize, n: usize) -> Self {
        Self {
            m,
            n,
            data: vec![S::ZERO; m * n],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut a = Self::zeros(n, n);
        for i in 0..n {
            a.set(i, i, S::ONE);
        }
        a
    }

    /// Takes column-major entries.
    pub fn from_col_major(m: usize, n: usize, data: Vec<S>) -> Result<Self, Error> {
        if data.len() != m * n {
            return Err(Error::Dimension(format!(
                "{} entries for a {m}x{n} matrix",
                data.len()
            )));
        }
        Ok(Self { m, n, data })
    }

    pub fn from_fn(m: usize, n: usize, mut f: impl FnMut(usize, usize) -> S) -> Self {
        let mut data = Vec::with_capacity(m * n);
        for j in 0..n {
            for i in 0..m {
                data.push(f(i, j));
            }
        }
        Self { m, n, data }
    }

    /// `[A b]`.
    pub fn augmented(&self, b: &[S]) -> Result<Self, Error> {
        if b.len() != self.m {
            return Err(Error::Dimension(format!(
                "right-hand side has {} rows, matrix has {}",
                b.len(),
                self.m
            )));
        }
        let mut data = self.data.clone();
        data.extend_from_slice(b);
        Ok(Self {
            m: self.m,
            n: self.n + 1,
            data,
        })
    }

    #[inline(always)]
    pub fn rows(&self) -> usize {
        self.m
    }

    #[inline(always)]
    pub fn cols(&self) -> usize {
        self.n
    }

    #[inline(always)]
    pub fn get(&self, i: usize, j: usize) -> S {
        self.data[j * self.m + i]
    }

    #[inline(always)]
    pub fn set(&mut self, i: usize, j: usize, v: S) {
        self.data[j * self.m + i] = v;
    }

    #[inline(always)]
    pub fn col(&self, j: usize) -> &[S] {
        &self.data[j * self.m..(j + 1) * self.m]
    }

    #[inline(always)]
    pub fn col_mut(&mut self, j: usize) -> &mut [S] {
        &mut self.data[j * self.m..(j + 1) * self.m]
    }

    pub fn as_slice(&self) -> &[S] {
        &self.data
    }

    pub(crate) fn as_mut_slice(&mut self) -> &mut [S] {
        &mut self.data
    }

    pub fn column(&self, j: usize) -> CVector<S> {
        self.col(j).to_vec().into()
    }

    /// Applies `f` to every entry, e.g. to widen the precision.
    pub fn map<T: Scalar>(&self, f: impl Fn(S) -> T) -> ColMatrix<T> {
        ColMatrix {
            m: self.m,
            n: self.n,
            data: self.data.iter().map(|&x| f(x)).collect(),
        }
    }

    pub fn is_finite(&self) -> bool {
        self.data.iter().all(|x| x.is_finite())
    }
}

/// Upper triangular `n x n` matrix, packed by columns: column `j` holds rows
/// `0..=j` starting at offset `j(j+1)/2`.
#[derive(Clone, Debug, PartialEq)]
pub struct UpperTri<S> {
    n: usize,
    data: Vec<S>,
}

impl<S: Scalar> UpperTri<S> {
    pub fn zeros(n: usize) -> Self {
        Self {
            n,
            data: vec![S::ZERO; n * (n + 1) / 2],
        }
    }

    pub fn from_dense(a: &ColMatrix<S>) -> Result<Self, Error> {
        if a.rows() != a.cols() {
            return Err(Error::Dimension(format!(
                "triangular factor must be square, got {}x{}",
                a.rows(),
                a.cols()
            )));
        }
        let mut r = Self::zeros(a.cols());
        for j in 0..a.cols() {
            for i in 0..=j {
                r.set(i, j, a.get(i, j));
            }
        }
        Ok(r)
    }

    #[inline(always)]
    pub fn dim(&self) -> usize {
        self.n
    }

    /// Zero below the diagonal.
    #[inline(always)]
    pub fn get(&self, i: usize, j: usize) -> S {
        if i > j {
            S::ZERO
        } else {
            self.data[j * (j + 1) / 2 + i]
        }
    }

    #[inline(always)]
    pub fn set(&mut self, i: usize, j: usize, v: S) {
        assert!(i <= j, "({i}, {j}) is below the diagonal");
        self.data[j * (j + 1) / 2 + i] = v;
    }

    /// Rows `0..=j` of column `j`.
    #[inline(always)]
    pub fn col(&self, j: usize) -> &[S] {
        let off = j * (j + 1) / 2;
        &self.data[off..off + j + 1]
    }

    /// Leading `k x k` block.
    pub fn leading(&self, k: usize) -> Self {
        assert!(k <= self.n);
        Self {
            n: k,
            data: self.data[..k * (k + 1) / 2].to_vec(),
        }
    }

    pub fn to_dense(&self) -> ColMatrix<S> {
        ColMatrix::from_fn(self.n, self.n, |i, j| self.get(i, j))
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct QrFactors<S> {
    pub q: ColMatrix<S>,
    pub r: UpperTri<S>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct LsqSolution<S: Scalar> {
    pub x: CVector<S>,
    /// Norm of the least-squares residual `b - Ax`.
    pub residual_norm: S::Real,
}
