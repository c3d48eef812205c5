//! Real arithmetic in double, double-double and quad-double precision.
//!
//! [`DoubleDouble`] and [`QuadDouble`] are unevaluated sums of two and four
//! hardware doubles. Both are built from the error-free transforms in
//! [`eft`]. The operator impls are the hot path and let overflow surface as
//! non-finite components; the `checked_*` methods turn those into
//! [`ArithError`]s for callers that need a diagnosis.

mod dd;
pub mod decimal;
pub mod eft;
pub mod hex;
mod qd;
mod renorm;

use std::fmt::Debug;
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};

pub use dd::DoubleDouble;
pub use qd::QuadDouble;

#[derive(Debug, Clone, Copy, PartialEq, Eq, thiserror::Error)]
pub enum ArithError {
    #[error("overflow")]
    Overflow,
    #[error("underflow of an error term")]
    Underflow,
    #[error("division by zero")]
    DivisionByZero,
    #[error("square root of a negative number")]
    NegativeSqrt,
    #[error("non-finite operand")]
    NonFinite,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum NumParseError {
    #[error("malformed decimal number `{0}`")]
    Decimal(String),
    #[error("malformed hex float `{0}`")]
    Hex(String),
    #[error("hex float `{0}` is not exactly representable as a double")]
    Inexact(String),
    #[error("number `{0}` is out of range")]
    OutOfRange(String),
    #[error("expected {expected} components, found {found}")]
    Components { expected: usize, found: usize },
}

/// A real field the factorizations can run in.
pub trait Real:
    Copy
    + Debug
    + PartialEq
    + PartialOrd
    + Send
    + Sync
    + 'static
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Neg<Output = Self>
    + AddAssign
    + SubAssign
    + MulAssign
{
    const ZERO: Self;
    const ONE: Self;
    /// Relative spacing of the format (`2^-52`, `2^-104`, `2^-209`).
    const EPS: f64;
    /// Decimal digits the format carries, rounded down.
    const DIGITS: u32;
    /// Number of hardware doubles in the representation.
    const COMPONENTS: usize;
    /// Short name used in reports: `d`, `dd` or `qd`.
    const NAME: &'static str;

    fn from_f64(x: f64) -> Self;
    /// Nearest double (the leading component).
    fn to_f64(self) -> f64;
    fn sqrt(self) -> Self;
    fn abs(self) -> Self;
    fn is_finite(self) -> bool;
    /// Components in decreasing magnitude; their exact sum is the value.
    fn components(self) -> Vec<f64>;
    /// Builds a value from exactly [`Real::COMPONENTS`] doubles, renormalizing.
    fn from_components(parts: &[f64]) -> Option<Self>;

    fn is_zero(self) -> bool {
        self == Self::ZERO
    }

    fn checked_add(self, rhs: Self) -> Result<Self, ArithError> {
        check_operands(self, rhs)?;
        finite_or_overflow(self + rhs)
    }

    fn checked_sub(self, rhs: Self) -> Result<Self, ArithError> {
        check_operands(self, rhs)?;
        finite_or_overflow(self - rhs)
    }

    fn checked_mul(self, rhs: Self) -> Result<Self, ArithError> {
        check_operands(self, rhs)?;
        finite_or_overflow(self * rhs)
    }

    fn checked_div(self, rhs: Self) -> Result<Self, ArithError> {
        check_operands(self, rhs)?;
        if rhs.is_zero() {
            return Err(ArithError::DivisionByZero);
        }
        finite_or_overflow(self / rhs)
    }

    fn checked_sqrt(self) -> Result<Self, ArithError> {
        if !self.is_finite() {
            return Err(ArithError::NonFinite);
        }
        if self < Self::ZERO {
            return Err(ArithError::NegativeSqrt);
        }
        Ok(self.sqrt())
    }
}

/// `2^k` for `k` in the normal exponent range.
#[inline(always)]
fn pow2(k: i32) -> f64 {
    debug_assert!((-1022..=1023).contains(&k));
    f64::from_bits(((k + 1023) as u64) << 52)
}

/// `x * 2^k` with a single rounding (only when the result is subnormal).
pub(crate) fn ldexp(mut x: f64, mut k: i32) -> f64 {
    while k > 1023 {
        x *= pow2(1023);
        k -= 1023;
    }
    while k < -1022 {
        let step = (k + 1022).max(-1022);
        x *= pow2(step);
        k -= step;
    }
    x * pow2(k)
}

/// Binary exponent `floor(log2 |x|)` of a nonzero finite double.
pub(crate) fn ilogb(x: f64) -> i32 {
    let bits = x.to_bits() & !(1u64 << 63);
    let biased = (bits >> 52) as i32;
    if biased == 0 {
        let frac = bits & ((1u64 << 52) - 1);
        (63 - frac.leading_zeros() as i32) - 1074
    } else {
        biased - 1023
    }
}

fn check_operands<R: Real>(a: R, b: R) -> Result<(), ArithError> {
    if a.is_finite() && b.is_finite() {
        Ok(())
    } else {
        Err(ArithError::NonFinite)
    }
}

fn finite_or_overflow<R: Real>(x: R) -> Result<R, ArithError> {
    if x.is_finite() {
        Ok(x)
    } else {
        Err(ArithError::Overflow)
    }
}

impl Real for f64 {
    const ZERO: Self = 0.0;
    const ONE: Self = 1.0;
    const EPS: f64 = f64::EPSILON;
    const DIGITS: u32 = 15;
    const COMPONENTS: usize = 1;
    const NAME: &'static str = "d";

    #[inline(always)]
    fn from_f64(x: f64) -> Self {
        x
    }
    #[inline(always)]
    fn to_f64(self) -> f64 {
        self
    }
    #[inline(always)]
    fn sqrt(self) -> Self {
        f64::sqrt(self)
    }
    #[inline(always)]
    fn abs(self) -> Self {
        f64::abs(self)
    }
    #[inline(always)]
    fn is_finite(self) -> bool {
        f64::is_finite(self)
    }
    fn components(self) -> Vec<f64> {
        vec![self]
    }
    fn from_components(parts: &[f64]) -> Option<Self> {
        match parts {
            [x] => Some(*x),
            _ => None,
        }
    }
}
