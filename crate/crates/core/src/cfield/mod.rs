//! Complex arithmetic over the three real precisions.

mod complex;
pub mod random;
mod scalar;

use std::ops::{Deref, DerefMut};

pub use complex::Complex;
pub use random::{random_ranged_complex, random_unit_complex, ModulusDist};
pub use scalar::Scalar;

use crate::parexec::tree::ReductionTree;

/// A fixed-length vector of entries.
#[derive(Clone, Debug, PartialEq)]
pub struct CVector<S>(Box<[S]>);

impl<S: Scalar> CVector<S> {
    pub fn zeros(m: usize) -> Self {
        Self(vec![S::ZERO; m].into_boxed_slice())
    }
}

impl<S> From<Vec<S>> for CVector<S> {
    fn from(v: Vec<S>) -> Self {
        Self(v.into_boxed_slice())
    }
}

impl<S> Deref for CVector<S> {
    type Target = [S];
    fn deref(&self) -> &[S] {
        &self.0
    }
}

impl<S> DerefMut for CVector<S> {
    fn deref_mut(&mut self) -> &mut [S] {
        &mut self.0
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, thiserror::Error)]
#[error("length mismatch: {0} vs {1}")]
pub struct LengthMismatch(pub usize, pub usize);

/// `x^H y`, summed by the fixed reduction tree.
pub fn inner_product<S: Scalar>(x: &[S], y: &[S]) -> Result<S, LengthMismatch> {
    if x.len() != y.len() {
        return Err(LengthMismatch(x.len(), y.len()));
    }
    let mut scratch = vec![S::ZERO; x.len()];
    Ok(ReductionTree::new(x.len()).inner_product(x, y, &mut scratch))
}
