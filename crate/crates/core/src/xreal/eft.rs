//! Error-free transforms on hardware doubles.
//!
//! Every function here returns a rounded result together with the exact
//! rounding error, so that `result + error` equals the mathematical value.

use super::ArithError;

/// `2^27 + 1`, the Dekker/Veltkamp splitter for 53-bit doubles.
const SPLITTER: f64 = 134_217_729.0;
/// Above this magnitude `SPLITTER * a` overflows.
const SPLIT_THRESHOLD: f64 = 6.696_928_794_914_17e299; // 2^996
const TWO_POW_28: f64 = 268_435_456.0;
const TWO_POW_M28: f64 = 3.725_290_298_461_914e-9;

/// Knuth's branch-free two-sum: `s = fl(a + b)`, `s + e = a + b`.
#[inline(always)]
pub fn two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    let bb = s - a;
    let e = (a - (s - bb)) + (b - bb);
    (s, e)
}

/// Fast two-sum; exact only when `|a| >= |b|` (or `a == 0`).
#[inline(always)]
pub fn quick_two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    let e = b - (s - a);
    (s, e)
}

/// `two_sum` with the overflow check.
pub fn try_two_sum(a: f64, b: f64) -> Result<(f64, f64), ArithError> {
    if !a.is_finite() || !b.is_finite() {
        return Err(ArithError::NonFinite);
    }
    let (s, e) = two_sum(a, b);
    if !s.is_finite() {
        return Err(ArithError::Overflow);
    }
    Ok((s, e))
}

/// Veltkamp split of `a` into two 26-bit halves with `hi + lo = a`.
#[inline(always)]
pub fn split(a: f64) -> (f64, f64) {
    if a.abs() > SPLIT_THRESHOLD {
        let a = a * TWO_POW_M28;
        let t = SPLITTER * a;
        let hi = t - (t - a);
        let lo = a - hi;
        (hi * TWO_POW_28, lo * TWO_POW_28)
    } else {
        let t = SPLITTER * a;
        let hi = t - (t - a);
        (hi, a - hi)
    }
}

/// Dekker's product: `p = fl(a * b)`, `p + e = a * b` (absent underflow).
#[inline(always)]
pub fn two_prod_dekker(a: f64, b: f64) -> (f64, f64) {
    let p = a * b;
    let (ah, al) = split(a);
    let (bh, bl) = split(b);
    let e = ((ah * bh - p) + ah * bl + al * bh) + al * bl;
    (p, e)
}

/// Product error through a fused multiply-add.
///
/// Always exact, but only fast when the target has a hardware FMA; without
/// one `f64::mul_add` falls back to a software routine.
#[inline(always)]
pub fn two_prod_fma(a: f64, b: f64) -> (f64, f64) {
    let p = a * b;
    let e = a.mul_add(b, -p);
    (p, e)
}

/// Error-free product. Uses the FMA path when the build target guarantees a
/// hardware FMA, Dekker splitting otherwise.
#[inline(always)]
pub fn two_prod(a: f64, b: f64) -> (f64, f64) {
    #[cfg(target_feature = "fma")]
    {
        two_prod_fma(a, b)
    }
    #[cfg(not(target_feature = "fma"))]
    {
        two_prod_dekker(a, b)
    }
}

/// Smallest product magnitude for which the error term is still a normal
/// double, i.e. `2^-1022 * 2^53`.
const PROD_ERR_NORMAL: f64 = 2.004_168_360_008_973e-292;

/// `two_prod` with overflow and inexact-error detection.
pub fn try_two_prod(a: f64, b: f64) -> Result<(f64, f64), ArithError> {
    if !a.is_finite() || !b.is_finite() {
        return Err(ArithError::NonFinite);
    }
    let (p, e) = two_prod(a, b);
    if !p.is_finite() || !e.is_finite() {
        return Err(ArithError::Overflow);
    }
    if p != 0.0 && p.abs() < PROD_ERR_NORMAL {
        return Err(ArithError::Underflow);
    }
    if p == 0.0 && a != 0.0 && b != 0.0 {
        return Err(ArithError::Underflow);
    }
    Ok((p, e))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn two_sum_examples() {
        let tiny = 2f64.powi(-60);
        assert_eq!(two_sum(1.0, tiny), (1.0, tiny));
        assert_eq!(two_sum(1.0, 1.0), (2.0, 0.0));
        let (s, _) = two_sum(0.1, 0.2);
        assert_eq!(s, 0.1 + 0.2);
    }

    #[test]
    fn two_prod_identity() {
        for &x in &[0.1, -3.75, 1e300, 5e-300] {
            assert_eq!(two_prod(1.0, x), (x, 0.0));
            assert_eq!(two_prod_dekker(1.0, x), (x, 0.0));
        }
    }

    #[test]
    fn split_halves() {
        for &x in &[0.1, 1e305, -7.0e-200] {
            let (h, l) = split(x);
            assert_eq!(h + l, x);
            // each half has at most 26 significant bits
            let bits = |v: f64| {
                if v == 0.0 {
                    0
                } else {
                    53 - (v.to_bits() & ((1u64 << 52) - 1)).trailing_zeros().min(52)
                }
            };
            assert!(bits(h) <= 27, "{x}: hi has {} bits", bits(h));
        }
    }

    #[test]
    fn overflow_and_underflow_flagged() {
        assert_eq!(try_two_sum(f64::MAX, f64::MAX), Err(ArithError::Overflow));
        assert_eq!(try_two_prod(1e200, 1e200), Err(ArithError::Overflow));
        assert_eq!(try_two_prod(1e-160, 1e-160), Err(ArithError::Underflow));
        assert_eq!(try_two_sum(f64::NAN, 1.0), Err(ArithError::NonFinite));
        assert!(try_two_prod(3.0, 0.0).is_ok());
    }
}
