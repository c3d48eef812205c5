use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};

use super::eft::{two_prod, two_sum};
use super::renorm::{renorm4, renorm_fixed};
use super::{ilogb, ldexp, Real};

/// A real number `c0 + c1 + c2 + c3` with `|c(i+1)| <= ulp(c(i))`.
#[derive(Clone, Copy, Debug, Default, PartialEq, PartialOrd)]
pub struct QuadDouble {
    c: [f64; 4],
}

/// Gap to the next double away from zero; zero for zero.
fn ulp(x: f64) -> f64 {
    let a = x.abs();
    if a == 0.0 {
        0.0
    } else {
        a.next_up() - a
    }
}

/// Exact sum of `N` doubles: the rounded sum plus `N - 1` error terms.
#[inline(always)]
fn sum_exact<const N: usize>(t: [f64; N], errs: &mut [f64]) -> f64 {
    let mut s = t[0];
    for (i, &x) in t.iter().enumerate().skip(1) {
        let (hi, lo) = two_sum(s, x);
        errs[i - 1] = lo;
        s = hi;
    }
    s
}

impl QuadDouble {
    pub const ZERO: Self = Self { c: [0.0; 4] };
    pub const ONE: Self = Self {
        c: [1.0, 0.0, 0.0, 0.0],
    };

    /// Renormalizing constructor; the components may overlap.
    pub fn new(c0: f64, c1: f64, c2: f64, c3: f64) -> Self {
        Self {
            c: renorm_fixed([c0, c1, c2, c3]),
        }
    }

    #[inline(always)]
    pub fn parts(self) -> [f64; 4] {
        self.c
    }

    /// Re-establishes the nonoverlapping form. Idempotent.
    pub fn renormalize(self) -> Self {
        Self {
            c: renorm_fixed(self.c),
        }
    }

    pub fn mul_pow2(self, k: i32) -> Self {
        Self {
            c: self.c.map(|x| ldexp(x, k)),
        }
    }

    #[inline(always)]
    pub fn square(self) -> Self {
        self * self
    }
}

impl Add for QuadDouble {
    type Output = Self;

    #[inline]
    fn add(self, b: Self) -> Self {
        let [a0, a1, a2, a3] = self.c;
        let [b0, b1, b2, b3] = b.c;
        let (s0, t0) = two_sum(a0, b0);
        let (s1, t1) = two_sum(a1, b1);
        let (s2, t2) = two_sum(a2, b2);
        let (s3, t3) = two_sum(a3, b3);
        Self {
            c: renorm4([s0, s1, t0, s2, t1, s3, t2, t3]),
        }
    }
}

impl Sub for QuadDouble {
    type Output = Self;

    #[inline]
    fn sub(self, b: Self) -> Self {
        self + (-b)
    }
}

impl Mul for QuadDouble {
    type Output = Self;

    /// Partial products are grouped by order of magnitude. Orders 0 to 3 are
    /// accumulated exactly, their errors carried down one order; order 4 is
    /// summed in plain double and orders 5 and 6 are rounded in.
    #[inline]
    fn mul(self, b: Self) -> Self {
        let [a0, a1, a2, a3] = self.c;
        let [b0, b1, b2, b3] = b.c;

        let (p00, q00) = two_prod(a0, b0);

        let (p01, q01) = two_prod(a0, b1);
        let (p10, q10) = two_prod(a1, b0);

        let (p02, q02) = two_prod(a0, b2);
        let (p11, q11) = two_prod(a1, b1);
        let (p20, q20) = two_prod(a2, b0);

        let (p03, q03) = two_prod(a0, b3);
        let (p12, q12) = two_prod(a1, b2);
        let (p21, q21) = two_prod(a2, b1);
        let (p30, q30) = two_prod(a3, b0);

        let order4 = a1 * b3 + a2 * b2 + a3 * b1;
        let order5 = a2 * b3 + a3 * b2 + a3 * b3;

        let mut e1 = [0.0; 2];
        let s1 = sum_exact([p01, p10, q00], &mut e1);

        let mut e2 = [0.0; 6];
        let s2 = sum_exact([p02, p11, p20, q01, q10, e1[0], e1[1]], &mut e2);

        let mut e3 = [0.0; 12];
        let s3 = sum_exact(
            [
                p03, p12, p21, p30, q02, q11, q20, e2[0], e2[1], e2[2], e2[3], e2[4], e2[5],
            ],
            &mut e3,
        );

        let mut s4 = order5 + order4;
        for &x in e3.iter().rev() {
            s4 += x;
        }
        s4 += ((q03 + q12) + q21) + q30;

        Self {
            c: renorm4([p00, s1, s2, s3, s4]),
        }
    }
}

impl Div for QuadDouble {
    type Output = Self;

    /// Newton iteration on the reciprocal of the divisor scaled to `[1, 2)`,
    /// then one correction of the quotient.
    fn div(self, b: Self) -> Self {
        if b.c[0] == 0.0 {
            return Self {
                c: [self.c[0] / b.c[0], f64::NAN, f64::NAN, f64::NAN],
            };
        }
        let k = ilogb(b.c[0]);
        let bs = b.mul_pow2(-k);
        let one = Self::ONE;
        let mut r = Self::from_f64(1.0 / bs.c[0]);
        for _ in 0..3 {
            r = r + r * (one - bs * r);
        }
        let q = self * r;
        let q = q + (self - bs * q) * r;
        q.mul_pow2(-k)
    }
}

impl Neg for QuadDouble {
    type Output = Self;

    #[inline(always)]
    fn neg(self) -> Self {
        Self {
            c: self.c.map(|x| -x),
        }
    }
}

impl AddAssign for QuadDouble {
    #[inline(always)]
    fn add_assign(&mut self, rhs: Self) {
        *self = *self + rhs;
    }
}

impl SubAssign for QuadDouble {
    #[inline(always)]
    fn sub_assign(&mut self, rhs: Self) {
        *self = *self - rhs;
    }
}

impl MulAssign for QuadDouble {
    #[inline(always)]
    fn mul_assign(&mut self, rhs: Self) {
        *self = *self * rhs;
    }
}

impl From<f64> for QuadDouble {
    fn from(x: f64) -> Self {
        Self::from_f64(x)
    }
}

impl Real for QuadDouble {
    const ZERO: Self = QuadDouble::ZERO;
    const ONE: Self = QuadDouble::ONE;
    const EPS: f64 = 1.215_432_671_457_254_2e-63; // 2^-209
    const DIGITS: u32 = 63;
    const COMPONENTS: usize = 4;
    const NAME: &'static str = "qd";

    #[inline(always)]
    fn from_f64(x: f64) -> Self {
        Self {
            c: [x, 0.0, 0.0, 0.0],
        }
    }

    #[inline(always)]
    fn to_f64(self) -> f64 {
        self.c[0]
    }

    /// Newton steps `y += (a - y^2) / (2y)` with the division done in double
    /// precision; each step gains about 53 bits.
    fn sqrt(self) -> Self {
        if self.c[0] == 0.0 {
            return Self::ZERO;
        }
        if self.c[0] < 0.0 {
            return Self { c: [f64::NAN; 4] };
        }
        let k = ilogb(self.c[0]) & !1;
        let a = self.mul_pow2(-k);
        let mut y = Self::from_f64(a.c[0].sqrt());
        for _ in 0..4 {
            let d = a - y.square();
            y = y + d * Self::from_f64(0.5 / y.c[0]);
        }
        y.mul_pow2(k / 2)
    }

    #[inline(always)]
    fn abs(self) -> Self {
        if self.c[0] < 0.0 || (self.c[0] == 0.0 && self.c[1] < 0.0) {
            -self
        } else {
            self
        }
    }

    #[inline(always)]
    fn is_finite(self) -> bool {
        self.c.iter().all(|x| x.is_finite())
    }

    fn components(self) -> Vec<f64> {
        self.c.to_vec()
    }

    fn from_components(parts: &[f64]) -> Option<Self> {
        match parts {
            &[c0, c1, c2, c3] => {
                let c = [c0, c1, c2, c3];
                // keep already normalized input bit for bit
                let stable = c.iter().all(|x| x.is_finite())
                    && (0..3).all(|i| c[i + 1] == 0.0 || c[i + 1].abs() <= ulp(c[i]));
                Some(if stable {
                    Self { c }
                } else {
                    Self::new(c0, c1, c2, c3)
                })
            }
            _ => None,
        }
    }
}

impl fmt::Display for QuadDouble {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let digits = f.precision().map_or(66, |p| p + 1);
        f.write_str(&super::decimal::to_decimal_string(*self, digits))
    }
}
