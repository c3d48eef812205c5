use std::ops::{Add, AddAssign, Div, Mul, Neg, Sub, SubAssign};

use crate::xreal::{ArithError, Real};

#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct Complex<R> {
    pub re: R,
    pub im: R,
}

impl<R: Real> Complex<R> {
    pub const ZERO: Self = Self {
        re: R::ZERO,
        im: R::ZERO,
    };
    pub const ONE: Self = Self {
        re: R::ONE,
        im: R::ZERO,
    };
    pub const I: Self = Self {
        re: R::ZERO,
        im: R::ONE,
    };

    #[inline(always)]
    pub fn new(re: R, im: R) -> Self {
        Self { re, im }
    }

    #[inline(always)]
    pub fn from_real(re: R) -> Self {
        Self { re, im: R::ZERO }
    }

    #[inline(always)]
    pub fn conj(self) -> Self {
        Self {
            re: self.re,
            im: -self.im,
        }
    }

    /// `re^2 + im^2` without scaling.
    #[inline(always)]
    pub fn norm_sqr(self) -> R {
        self.re * self.re + self.im * self.im
    }

    /// Modulus, scaled so that no intermediate overflows.
    pub fn abs(self) -> R {
        let (a, b) = (self.re.abs(), self.im.abs());
        let (big, small) = if a >= b { (a, b) } else { (b, a) };
        if big.is_zero() {
            return R::ZERO;
        }
        let t = small / big;
        big * (R::ONE + t * t).sqrt()
    }

    #[inline(always)]
    pub fn scale(self, s: R) -> Self {
        Self {
            re: self.re * s,
            im: self.im * s,
        }
    }

    #[inline(always)]
    pub fn div_real(self, s: R) -> Self {
        Self {
            re: self.re / s,
            im: self.im / s,
        }
    }

    pub fn is_finite(self) -> bool {
        self.re.is_finite() && self.im.is_finite()
    }

    /// Smith's algorithm: divides through by the larger component of the
    /// divisor so that moduli near the overflow threshold stay finite.
    pub fn smith_div(self, b: Self) -> Self {
        let (a, c, d) = (self, b.re, b.im);
        if c.abs() >= d.abs() {
            let r = d / c;
            let den = c + d * r;
            Self {
                re: (a.re + a.im * r) / den,
                im: (a.im - a.re * r) / den,
            }
        } else {
            let r = c / d;
            let den = c * r + d;
            Self {
                re: (a.re * r + a.im) / den,
                im: (a.im * r - a.re) / den,
            }
        }
    }

    pub fn checked_div(self, b: Self) -> Result<Self, ArithError> {
        if !self.is_finite() || !b.is_finite() {
            return Err(ArithError::NonFinite);
        }
        if b.re.is_zero() && b.im.is_zero() {
            return Err(ArithError::DivisionByZero);
        }
        let q = self.smith_div(b);
        if q.is_finite() {
            Ok(q)
        } else {
            Err(ArithError::Overflow)
        }
    }

    pub fn checked_mul(self, b: Self) -> Result<Self, ArithError> {
        if !self.is_finite() || !b.is_finite() {
            return Err(ArithError::NonFinite);
        }
        let p = self * b;
        if p.is_finite() {
            Ok(p)
        } else {
            Err(ArithError::Overflow)
        }
    }
}

impl<R: Real> Add for Complex<R> {
    type Output = Self;
    #[inline(always)]
    fn add(self, b: Self) -> Self {
        Self {
            re: self.re + b.re,
            im: self.im + b.im,
        }
    }
}

impl<R: Real> Sub for Complex<R> {
    type Output = Self;
    #[inline(always)]
    fn sub(self, b: Self) -> Self {
        Self {
            re: self.re - b.re,
            im: self.im - b.im,
        }
    }
}

impl<R: Real> Mul for Complex<R> {
    type Output = Self;
    #[inline(always)]
    fn mul(self, b: Self) -> Self {
        Self {
            re: self.re * b.re - self.im * b.im,
            im: self.re * b.im + self.im * b.re,
        }
    }
}

impl<R: Real> Div for Complex<R> {
    type Output = Self;
    #[inline]
    fn div(self, b: Self) -> Self {
        self.smith_div(b)
    }
}

impl<R: Real> Neg for Complex<R> {
    type Output = Self;
    #[inline(always)]
    fn neg(self) -> Self {
        Self {
            re: -self.re,
            im: -self.im,
        }
    }
}

impl<R: Real> AddAssign for Complex<R> {
    #[inline(always)]
    fn add_assign(&mut self, b: Self) {
        *self = *self + b;
    }
}

impl<R: Real> SubAssign for Complex<R> {
    #[inline(always)]
    fn sub_assign(&mut self, b: Self) {
        *self = *self - b;
    }
}
