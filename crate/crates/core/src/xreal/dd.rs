use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};

use super::eft::{quick_two_sum, two_prod, two_sum};
use super::{ilogb, ldexp, Real};

/// A real number `hi + lo` carried by two doubles with `|lo| <= ulp(hi)/2`.
#[derive(Clone, Copy, Debug, Default, PartialEq, PartialOrd)]
pub struct DoubleDouble {
    hi: f64,
    lo: f64,
}

impl DoubleDouble {
    pub const ZERO: Self = Self { hi: 0.0, lo: 0.0 };
    pub const ONE: Self = Self { hi: 1.0, lo: 0.0 };

    /// Renormalizing constructor; `hi` and `lo` may overlap.
    #[inline]
    pub fn new(hi: f64, lo: f64) -> Self {
        let (hi, lo) = two_sum(hi, lo);
        Self { hi, lo }
    }

    #[inline(always)]
    pub fn hi(self) -> f64 {
        self.hi
    }

    #[inline(always)]
    pub fn lo(self) -> f64 {
        self.lo
    }

    /// Re-establishes `|lo| <= ulp(hi)/2`. Idempotent.
    #[inline]
    pub fn renormalize(self) -> Self {
        Self::new(self.hi, self.lo)
    }

    #[inline(always)]
    fn add_f64(self, b: f64) -> Self {
        let (s1, s2) = two_sum(self.hi, b);
        let s2 = s2 + self.lo;
        let (hi, lo) = quick_two_sum(s1, s2);
        Self { hi, lo }
    }

    /// Multiplies by `2^k` exactly (barring over/underflow).
    pub fn mul_pow2(self, k: i32) -> Self {
        Self {
            hi: ldexp(self.hi, k),
            lo: ldexp(self.lo, k),
        }
    }

    #[inline(always)]
    pub fn square(self) -> Self {
        self * self
    }

    fn recip_scaled(b: Self) -> Self {
        let one = Self::ONE;
        let mut r = Self::from_f64(1.0 / b.hi);
        for _ in 0..2 {
            let e = one - b * r;
            r = r + r * e;
        }
        r
    }
}

impl Add for DoubleDouble {
    type Output = Self;

    #[inline(always)]
    fn add(self, b: Self) -> Self {
        let (s1, s2) = two_sum(self.hi, b.hi);
        let (t1, t2) = two_sum(self.lo, b.lo);
        let s2 = s2 + t1;
        let (s1, s2) = quick_two_sum(s1, s2);
        let s2 = s2 + t2;
        let (hi, lo) = quick_two_sum(s1, s2);
        Self { hi, lo }
    }
}

impl Sub for DoubleDouble {
    type Output = Self;

    #[inline(always)]
    fn sub(self, b: Self) -> Self {
        self + (-b)
    }
}

impl Mul for DoubleDouble {
    type Output = Self;

    #[inline(always)]
    fn mul(self, b: Self) -> Self {
        let (p, e) = two_prod(self.hi, b.hi);
        let (t1, t1e) = two_prod(self.hi, b.lo);
        let (t2, t2e) = two_prod(self.lo, b.hi);
        let (s, se) = two_sum(t1, t2);
        let (e2, ee) = two_sum(e, s);
        let tail = (((ee + se) + t1e) + t2e) + self.lo * b.lo;
        let (h, l) = quick_two_sum(p, e2);
        let (hi, lo) = quick_two_sum(h, l + tail);
        Self { hi, lo }
    }
}

impl Div for DoubleDouble {
    type Output = Self;

    /// Newton iteration on the reciprocal of the divisor, scaled to `[1, 2)`,
    /// followed by one correction of the quotient.
    fn div(self, b: Self) -> Self {
        if b.hi == 0.0 {
            return Self {
                hi: self.hi / b.hi,
                lo: f64::NAN,
            };
        }
        let k = ilogb(b.hi);
        let bs = b.mul_pow2(-k);
        let r = Self::recip_scaled(bs);
        let q = self * r;
        let q = q + (self - bs * q) * r;
        q.mul_pow2(-k)
    }
}

impl Neg for DoubleDouble {
    type Output = Self;

    #[inline(always)]
    fn neg(self) -> Self {
        Self {
            hi: -self.hi,
            lo: -self.lo,
        }
    }
}

impl AddAssign for DoubleDouble {
    #[inline(always)]
    fn add_assign(&mut self, rhs: Self) {
        *self = *self + rhs;
    }
}

impl SubAssign for DoubleDouble {
    #[inline(always)]
    fn sub_assign(&mut self, rhs: Self) {
        *self = *self - rhs;
    }
}

impl MulAssign for DoubleDouble {
    #[inline(always)]
    fn mul_assign(&mut self, rhs: Self) {
        *self = *self * rhs;
    }
}

impl From<f64> for DoubleDouble {
    fn from(x: f64) -> Self {
        Self { hi: x, lo: 0.0 }
    }
}

impl Real for DoubleDouble {
    const ZERO: Self = DoubleDouble::ZERO;
    const ONE: Self = DoubleDouble::ONE;
    const EPS: f64 = 4.930_380_657_631_324e-32; // 2^-104
    const DIGITS: u32 = 31;
    const COMPONENTS: usize = 2;
    const NAME: &'static str = "dd";

    #[inline(always)]
    fn from_f64(x: f64) -> Self {
        Self { hi: x, lo: 0.0 }
    }

    #[inline(always)]
    fn to_f64(self) -> f64 {
        self.hi
    }

    /// Newton refinement of the double-precision root, on an argument
    /// scaled by an even power of two.
    fn sqrt(self) -> Self {
        if self.hi == 0.0 {
            return Self::ZERO;
        }
        if self.hi < 0.0 {
            return Self {
                hi: f64::NAN,
                lo: f64::NAN,
            };
        }
        let k = ilogb(self.hi) & !1;
        let a = self.mul_pow2(-k);
        let mut y = Self::from_f64(a.hi.sqrt());
        for _ in 0..2 {
            let d = a - y.square();
            y = y.add_f64(d.hi / (2.0 * y.hi));
        }
        y.mul_pow2(k / 2)
    }

    #[inline(always)]
    fn abs(self) -> Self {
        if self.hi < 0.0 || (self.hi == 0.0 && self.lo < 0.0) {
            -self
        } else {
            self
        }
    }

    #[inline(always)]
    fn is_finite(self) -> bool {
        self.hi.is_finite() && self.lo.is_finite()
    }

    fn components(self) -> Vec<f64> {
        vec![self.hi, self.lo]
    }

    fn from_components(parts: &[f64]) -> Option<Self> {
        match parts {
            [hi, lo] => Some(Self::new(*hi, *lo)),
            _ => None,
        }
    }
}

impl fmt::Display for DoubleDouble {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let digits = f.precision().map_or(34, |p| p + 1);
        f.write_str(&super::decimal::to_decimal_string(*self, digits))
    }
}
