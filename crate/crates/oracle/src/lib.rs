//! Exact arithmetic used as an independent reference by the `mgsqd` tests.
//!
//! Nothing in here is fast. [`ExactDyadic`] holds any finite sum or product
//! of doubles exactly; [`ExactComplex`] and [`solve_exact`] do exact rational
//! linear algebra for small dense systems.

use std::cmp::Ordering;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::{BigInt, Sign};
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// `mant * 2^exp` with an arbitrary precision mantissa.
#[derive(Clone, Debug)]
pub struct ExactDyadic {
    mant: BigInt,
    exp: i64,
}

impl ExactDyadic {
    pub fn zero() -> Self {
        Self {
            mant: BigInt::zero(),
            exp: 0,
        }
    }

    /// Exact value of a finite double. Panics on NaN or infinity.
    pub fn from_f64(x: f64) -> Self {
        assert!(x.is_finite(), "ExactDyadic::from_f64 on non-finite {x}");
        if x == 0.0 {
            return Self::zero();
        }
        let bits = x.to_bits();
        let sign = bits >> 63;
        let biased = ((bits >> 52) & 0x7ff) as i64;
        let frac = bits & ((1u64 << 52) - 1);
        let (m, e) = if biased == 0 {
            (frac, -1074)
        } else {
            (frac | (1u64 << 52), biased - 1075)
        };
        let mant = if sign == 1 {
            -BigInt::from(m)
        } else {
            BigInt::from(m)
        };
        Self { mant, exp: e }.normalized()
    }

    /// Exact sum of a list of doubles.
    pub fn sum(parts: &[f64]) -> Self {
        parts
            .iter()
            .fold(Self::zero(), |acc, &p| acc + Self::from_f64(p))
    }

    pub fn pow2(e: i64) -> Self {
        Self {
            mant: BigInt::one(),
            exp: e,
        }
    }

    pub fn is_zero(&self) -> bool {
        self.mant.is_zero()
    }

    pub fn signum(&self) -> i32 {
        match self.mant.sign() {
            Sign::Minus => -1,
            Sign::NoSign => 0,
            Sign::Plus => 1,
        }
    }

    pub fn abs(&self) -> Self {
        Self {
            mant: self.mant.abs(),
            exp: self.exp,
        }
    }

    pub fn mul_pow2(&self, e: i64) -> Self {
        Self {
            mant: self.mant.clone(),
            exp: self.exp + e,
        }
    }

    fn normalized(mut self) -> Self {
        if self.mant.is_zero() {
            self.exp = 0;
            return self;
        }
        let tz = self.mant.trailing_zeros().unwrap_or(0);
        if tz > 0 {
            self.mant >>= tz;
            self.exp += tz as i64;
        }
        self
    }

    fn aligned(a: &Self, b: &Self) -> (BigInt, BigInt, i64) {
        let e = a.exp.min(b.exp);
        let am = &a.mant << (a.exp - e) as usize;
        let bm = &b.mant << (b.exp - e) as usize;
        (am, bm, e)
    }

    pub fn cmp_abs(&self, other: &Self) -> Ordering {
        let (a, b, _) = Self::aligned(self, other);
        a.abs().cmp(&b.abs())
    }

    pub fn to_rational(&self) -> BigRational {
        if self.exp >= 0 {
            BigRational::from_integer(&self.mant << self.exp as usize)
        } else {
            BigRational::new(self.mant.clone(), BigInt::one() << (-self.exp) as usize)
        }
    }

    /// Nearest double (via the rational conversion of `num-rational`).
    pub fn to_f64(&self) -> f64 {
        self.to_rational().to_f64().unwrap_or(f64::NAN)
    }

    /// `|approx - exact| <= 2^-k * |exact|`, decided exactly.
    pub fn rel_error_within(approx: &Self, exact: &Self, k: i64) -> bool {
        let diff = (approx.clone() - exact.clone()).abs().mul_pow2(k);
        diff.cmp_abs(exact) != Ordering::Greater
    }

    /// `|approx - exact| / |exact|` as a double (0 when both are zero).
    pub fn rel_error(approx: &Self, exact: &Self) -> f64 {
        let diff = (approx.clone() - exact.clone()).abs();
        if diff.is_zero() {
            return 0.0;
        }
        if exact.is_zero() {
            return f64::INFINITY;
        }
        ratio_f64(&diff, &exact.abs())
    }
}

/// `a / b` for positive dyadics, to double accuracy, without overflowing.
fn ratio_f64(a: &ExactDyadic, b: &ExactDyadic) -> f64 {
    let (am, ae) = top_bits(&a.mant);
    let (bm, be) = top_bits(&b.mant);
    let e = (a.exp + ae) - (b.exp + be);
    (am / bm) * 2f64.powi(e.clamp(-2000, 2000) as i32)
}

fn top_bits(m: &BigInt) -> (f64, i64) {
    let bits = m.bits() as i64;
    let shift = (bits - 64).max(0);
    let top = (m.abs() >> shift as usize).to_u64().unwrap_or(u64::MAX);
    (top as f64, shift)
}

impl PartialEq for ExactDyadic {
    fn eq(&self, other: &Self) -> bool {
        let (a, b, _) = Self::aligned(self, other);
        a == b
    }
}

impl Eq for ExactDyadic {}

impl PartialOrd for ExactDyadic {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for ExactDyadic {
    fn cmp(&self, other: &Self) -> Ordering {
        let (a, b, _) = Self::aligned(self, other);
        a.cmp(&b)
    }
}

impl Add for ExactDyadic {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        let (a, b, e) = Self::aligned(&self, &rhs);
        Self {
            mant: a + b,
            exp: e,
        }
        .normalized()
    }
}

impl Sub for ExactDyadic {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        let (a, b, e) = Self::aligned(&self, &rhs);
        Self {
            mant: a - b,
            exp: e,
        }
        .normalized()
    }
}

impl Mul for ExactDyadic {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        Self {
            mant: self.mant * rhs.mant,
            exp: self.exp + rhs.exp,
        }
        .normalized()
    }
}

impl Neg for ExactDyadic {
    type Output = Self;
    fn neg(self) -> Self {
        Self {
            mant: -self.mant,
            exp: self.exp,
        }
    }
}

/// Exact complex rational.
#[derive(Clone, Debug, PartialEq)]
pub struct ExactComplex {
    pub re: BigRational,
    pub im: BigRational,
}

impl ExactComplex {
    pub fn zero() -> Self {
        Self {
            re: BigRational::zero(),
            im: BigRational::zero(),
        }
    }

    pub fn from_f64(re: f64, im: f64) -> Self {
        Self {
            re: ExactDyadic::from_f64(re).to_rational(),
            im: ExactDyadic::from_f64(im).to_rational(),
        }
    }

    /// Exact value of a complex number given by the component lists of its
    /// real and imaginary parts (double-double, quad-double, ...).
    pub fn from_parts(re: &[f64], im: &[f64]) -> Self {
        Self {
            re: ExactDyadic::sum(re).to_rational(),
            im: ExactDyadic::sum(im).to_rational(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn conj(&self) -> Self {
        Self {
            re: self.re.clone(),
            im: -self.im.clone(),
        }
    }

    pub fn add(&self, o: &Self) -> Self {
        Self {
            re: &self.re + &o.re,
            im: &self.im + &o.im,
        }
    }

    pub fn sub(&self, o: &Self) -> Self {
        Self {
            re: &self.re - &o.re,
            im: &self.im - &o.im,
        }
    }

    pub fn mul(&self, o: &Self) -> Self {
        Self {
            re: &self.re * &o.re - &self.im * &o.im,
            im: &self.re * &o.im + &self.im * &o.re,
        }
    }

    pub fn div(&self, o: &Self) -> Self {
        let d = &o.re * &o.re + &o.im * &o.im;
        assert!(!d.is_zero(), "ExactComplex division by zero");
        let num = self.mul(&o.conj());
        Self {
            re: num.re / &d,
            im: num.im / d,
        }
    }

    /// `|z|^2`, exact.
    pub fn norm_sqr(&self) -> BigRational {
        &self.re * &self.re + &self.im * &self.im
    }

    pub fn to_f64(&self) -> (f64, f64) {
        (
            self.re.to_f64().unwrap_or(f64::NAN),
            self.im.to_f64().unwrap_or(f64::NAN),
        )
    }
}

/// Solves the dense square system `a x = b` exactly by Gaussian elimination
/// with first-nonzero pivoting. Returns `None` when `a` is singular.
pub fn solve_exact(
    mut a: Vec<Vec<ExactComplex>>,
    mut b: Vec<ExactComplex>,
) -> Option<Vec<ExactComplex>> {
    let n = b.len();
    assert!(a.len() == n && a.iter().all(|row| row.len() == n));
    for col in 0..n {
        let piv = (col..n).find(|&r| !a[r][col].is_zero())?;
        a.swap(col, piv);
        b.swap(col, piv);
        let pivot = a[col].clone();
        for r in col + 1..n {
            if a[r][col].is_zero() {
                continue;
            }
            let f = a[r][col].div(&pivot[col]);
            for (c, p) in pivot.iter().enumerate().skip(col) {
                a[r][c] = a[r][c].sub(&f.mul(p));
            }
            let t = f.mul(&b[col]);
            b[r] = b[r].sub(&t);
        }
    }
    let mut x = vec![ExactComplex::zero(); n];
    for r in (0..n).rev() {
        let mut s = b[r].clone();
        for c in r + 1..n {
            s = s.sub(&a[r][c].mul(&x[c]));
        }
        x[r] = s.div(&a[r][r]);
    }
    Some(x)
}

/// Exact least squares solution of an `m x n` complex system through the
/// normal equations `A^H A x = A^H b`. `a` is given row-major.
pub fn normal_equations_solve(
    a: &[Vec<ExactComplex>],
    b: &[ExactComplex],
) -> Option<Vec<ExactComplex>> {
    let m = a.len();
    let n = a.first().map_or(0, Vec::len);
    let mut g = vec![vec![ExactComplex::zero(); n]; n];
    let mut h = vec![ExactComplex::zero(); n];
    for i in 0..n {
        for j in 0..n {
            let mut s = ExactComplex::zero();
            for row in a.iter().take(m) {
                s = s.add(&row[i].conj().mul(&row[j]));
            }
            g[i][j] = s;
        }
        let mut s = ExactComplex::zero();
        for (row, bv) in a.iter().zip(b) {
            s = s.add(&row[i].conj().mul(bv));
        }
        h[i] = s;
    }
    solve_exact(g, h)
}

/// `|x - y|` for rationals, as a double.
pub fn rational_abs_diff_f64(x: &BigRational, y: &BigRational) -> f64 {
    (x - y).abs().to_f64().unwrap_or(f64::INFINITY)
}

/// Floor of `log2 |x|` for a nonzero rational.
pub fn rational_ilog2(x: &BigRational) -> i64 {
    let n = x.numer().abs();
    let d = x.denom().abs();
    let mut e = n.bits() as i64 - d.bits() as i64;
    // adjust so that 2^e <= |x| < 2^(e+1)
    let two = BigInt::from(2);
    let pow = |k: i64| -> BigRational {
        if k >= 0 {
            BigRational::from_integer(two.pow(k as u32))
        } else {
            BigRational::new(BigInt::one(), two.pow((-k) as u32))
        }
    };
    let ax = BigRational::new(n, d);
    while pow(e) > ax {
        e -= 1;
    }
    while pow(e + 1) <= ax {
        e += 1;
    }
    e
}
