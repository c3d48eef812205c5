use std::fmt::Debug;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use super::Complex;
use crate::xreal::{DoubleDouble, QuadDouble, Real};

/// Matrix entry type: hardware doubles for the real baseline, or complex
/// numbers over any [`Real`].
pub trait Scalar:
    Copy
    + Debug
    + PartialEq
    + Send
    + Sync
    + 'static
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
    + AddAssign
    + SubAssign
{
    type Real: Real;

    const ZERO: Self;
    const ONE: Self;
    /// Precision token: `d`, `cd`, `cdd` or `cqd`.
    const NAME: &'static str;
    /// Hardware doubles per entry.
    const PARTS: usize;

    fn conj(self) -> Self;
    fn re(self) -> Self::Real;
    fn from_real(r: Self::Real) -> Self;
    /// Drops `im` for real scalars.
    fn from_re_im(re: Self::Real, im: Self::Real) -> Self;
    /// Builds an entry from a double-precision complex sample; real scalars
    /// keep the real part.
    fn from_f64_pair(re: f64, im: f64) -> Self;
    fn div_real(self, r: Self::Real) -> Self;
    fn div(self, d: Self) -> Self;
    fn modulus(self) -> Self::Real;
    fn is_finite(self) -> bool;
    /// Real components first, then imaginary ones.
    fn to_parts(self) -> Vec<f64>;
    fn from_parts(parts: &[f64]) -> Option<Self>;
}

impl Scalar for f64 {
    type Real = f64;

    const ZERO: Self = 0.0;
    const ONE: Self = 1.0;
    const NAME: &'static str = "d";
    const PARTS: usize = 1;

    #[inline(always)]
    fn conj(self) -> Self {
        self
    }
    #[inline(always)]
    fn re(self) -> f64 {
        self
    }
    #[inline(always)]
    fn from_real(r: f64) -> Self {
        r
    }
    fn from_re_im(re: f64, _im: f64) -> Self {
        re
    }
    fn from_f64_pair(re: f64, _im: f64) -> Self {
        re
    }
    #[inline(always)]
    fn div_real(self, r: f64) -> Self {
        self / r
    }
    #[inline(always)]
    fn div(self, d: Self) -> Self {
        self / d
    }
    fn modulus(self) -> f64 {
        self.abs()
    }
    fn is_finite(self) -> bool {
        f64::is_finite(self)
    }
    fn to_parts(self) -> Vec<f64> {
        vec![self]
    }
    fn from_parts(parts: &[f64]) -> Option<Self> {
        match parts {
            [x] => Some(*x),
            _ => None,
        }
    }
}

macro_rules! complex_scalar {
    ($r:ty, $name:literal) => {
        impl Scalar for Complex<$r> {
            type Real = $r;

            const ZERO: Self = Complex::<$r>::ZERO;
            const ONE: Self = Complex::<$r>::ONE;
            const NAME: &'static str = $name;
            const PARTS: usize = 2 * <$r as Real>::COMPONENTS;

            #[inline(always)]
            fn conj(self) -> Self {
                Complex::conj(self)
            }
            #[inline(always)]
            fn re(self) -> $r {
                self.re
            }
            #[inline(always)]
            fn from_real(r: $r) -> Self {
                Complex::from_real(r)
            }
            #[inline(always)]
            fn from_re_im(re: $r, im: $r) -> Self {
                Complex::new(re, im)
            }
            fn from_f64_pair(re: f64, im: f64) -> Self {
                Complex::new(<$r>::from_f64(re), <$r>::from_f64(im))
            }
            #[inline(always)]
            fn div_real(self, r: $r) -> Self {
                Complex::div_real(self, r)
            }
            #[inline]
            fn div(self, d: Self) -> Self {
                self.smith_div(d)
            }
            fn modulus(self) -> $r {
                self.abs()
            }
            fn is_finite(self) -> bool {
                Complex::is_finite(self)
            }
            fn to_parts(self) -> Vec<f64> {
                let mut v = self.re.components();
                v.extend(self.im.components());
                v
            }
            fn from_parts(parts: &[f64]) -> Option<Self> {
                let k = <$r as Real>::COMPONENTS;
                if parts.len() != 2 * k {
                    return None;
                }
                Some(Complex::new(
                    <$r>::from_components(&parts[..k])?,
                    <$r>::from_components(&parts[k..])?,
                ))
            }
        }
    };
}

complex_scalar!(f64, "cd");
complex_scalar!(DoubleDouble, "cdd");
complex_scalar!(QuadDouble, "cqd");
