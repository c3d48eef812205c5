//! Exact decimal conversion for [`Real`] values.
//!
//! Formatting expands the components into an exact dyadic rational and rounds
//! it half-to-even at the requested number of significant digits. Parsing
//! reads the decimal string as an exact rational and peels off components one
//! correctly rounded double at a time.

use num_bigint::{BigInt, BigUint, Sign};
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::{ldexp, NumParseError, Real};

/// Exact value of a finite double as `m * 2^e`.
fn decompose(x: f64) -> (BigInt, i64) {
    let bits = x.to_bits();
    let neg = bits >> 63 == 1;
    let biased = ((bits >> 52) & 0x7ff) as i64;
    let frac = bits & ((1u64 << 52) - 1);
    let (m, e) = if biased == 0 {
        (frac, -1074)
    } else {
        (frac | (1u64 << 52), biased - 1075)
    };
    let m = BigInt::from(m);
    (if neg { -m } else { m }, e)
}

/// Exact sum of the components as `m * 2^e`.
fn dyadic_sum(parts: &[f64]) -> (BigInt, i64) {
    let terms: Vec<_> = parts.iter().map(|&x| decompose(x)).collect();
    let e = terms.iter().map(|t| t.1).min().unwrap_or(0);
    let m = terms
        .into_iter()
        .map(|(m, te)| m << ((te - e) as usize))
        .fold(BigInt::zero(), |acc, m| acc + m);
    (m, e)
}

fn pow10(k: u64) -> BigUint {
    num_traits::pow(BigUint::from(10u32), k as usize)
}

/// `num / den` rounded half to even.
fn div_round_even(num: &BigUint, den: &BigUint) -> BigUint {
    let q = num / den;
    let r = num - &q * den;
    let twice = &r << 1usize;
    if twice > *den || (twice == *den && q.bit(0)) {
        q + 1u32
    } else {
        q
    }
}

/// `num / den` as a fraction with both sides scaled to integers.
struct Scaled {
    num: BigUint,
    den: BigUint,
}

impl Scaled {
    /// `|m| * 2^e * 10^s`.
    fn new(m: &BigUint, e: i64, s: i64) -> Self {
        let mut num = m.clone();
        let mut den = BigUint::one();
        if e >= 0 {
            num <<= e as usize;
        } else {
            den <<= (-e) as usize;
        }
        if s >= 0 {
            num *= pow10(s as u64);
        } else {
            den *= pow10((-s) as u64);
        }
        Self { num, den }
    }
}

/// Formats `x` as `d.ddd...e±K` with `digits` significant digits.
///
/// Zero prints as `0.0e0`; non-finite values as `inf`, `-inf` or `nan`.
pub fn to_decimal_string<R: Real>(x: R, digits: usize) -> String {
    let digits = digits.max(1);
    let parts = x.components();
    if parts.iter().any(|p| p.is_nan()) {
        return "nan".into();
    }
    if !x.is_finite() {
        return if parts[0] < 0.0 { "-inf" } else { "inf" }.into();
    }
    let (m, e) = dyadic_sum(&parts);
    if m.is_zero() {
        return "0.0e0".into();
    }
    let neg = m.sign() == Sign::Minus;
    let mag = m.magnitude().clone();

    let lower = pow10(digits as u64 - 1);
    let upper = pow10(digits as u64);
    let mut k = parts[0].abs().log10().floor() as i64;
    let n = loop {
        let s = digits as i64 - 1 - k;
        let sc = Scaled::new(&mag, e, s);
        let floor = &sc.num / &sc.den;
        if floor < lower {
            k -= 1;
        } else if floor >= upper {
            k += 1;
        } else {
            let n = div_round_even(&sc.num, &sc.den);
            if n == upper {
                k += 1;
                break lower.clone();
            }
            break n;
        }
    };

    let ds = n.to_str_radix(10);
    let mut out = String::with_capacity(digits + 8);
    if neg {
        out.push('-');
    }
    out.push_str(&ds[..1]);
    out.push('.');
    if ds.len() > 1 {
        out.push_str(&ds[1..]);
    } else {
        out.push('0');
    }
    out.push('e');
    out.push_str(&k.to_string());
    out
}

/// Correctly rounded (half to even) double nearest to `num / den`, both
/// positive.
pub(crate) fn ratio_to_f64(num: &BigUint, den: &BigUint) -> f64 {
    if num.is_zero() {
        return 0.0;
    }
    let mut top = num.bits() as i64 - den.bits() as i64;
    let ge = |k: i64| -> bool {
        if k >= 0 {
            *num >= den << (k as usize)
        } else {
            (num << ((-k) as usize)) >= *den
        }
    };
    if !ge(top) {
        top -= 1;
    }
    if top > 1023 {
        return f64::INFINITY;
    }
    let lsb = (top - 52).max(-1074);
    let (n, d) = if lsb >= 0 {
        (num.clone(), den << (lsb as usize))
    } else {
        (num << ((-lsb) as usize), den.clone())
    };
    let m = div_round_even(&n, &d);
    let mf = m.to_u64_digits().first().copied().unwrap_or(0) as f64;
    ldexp(mf, lsb as i32)
}

/// Parses `[+-]digits[.digits][(e|E)[+-]digits]` into the nearest value of
/// `R`, one correctly rounded component at a time.
pub fn parse_decimal<R: Real>(s: &str) -> Result<R, NumParseError> {
    let bad = || NumParseError::Decimal(s.to_string());
    let t = s.trim();
    let (neg, body) = match t.as_bytes().first() {
        Some(b'-') => (true, &t[1..]),
        Some(b'+') => (false, &t[1..]),
        _ => (false, t),
    };
    let (mantissa, exp) = match body.find(['e', 'E']) {
        Some(i) => (&body[..i], body[i + 1..].parse::<i64>().map_err(|_| bad())?),
        None => (body, 0),
    };
    let (int_part, frac_part) = match mantissa.find('.') {
        Some(i) => (&mantissa[..i], &mantissa[i + 1..]),
        None => (mantissa, ""),
    };
    if int_part.is_empty() && frac_part.is_empty() {
        return Err(bad());
    }
    let all_digits = |p: &str| p.bytes().all(|b| b.is_ascii_digit());
    if !all_digits(int_part) || !all_digits(frac_part) {
        return Err(bad());
    }
    if exp.unsigned_abs() > 100_000 {
        return Err(bad());
    }

    let joined = format!("{int_part}{frac_part}");
    let digits = BigInt::parse_bytes(joined.as_bytes(), 10).ok_or_else(bad)?;
    let scale = exp - frac_part.len() as i64;
    let mut rem = if scale >= 0 {
        BigRational::from_integer(digits * BigInt::from(pow10(scale as u64)))
    } else {
        BigRational::new(digits, BigInt::from(pow10((-scale) as u64)))
    };

    let mut parts = Vec::with_capacity(R::COMPONENTS);
    for _ in 0..R::COMPONENTS {
        let c = ratio_to_f64(rem.numer().magnitude(), rem.denom().magnitude());
        if c.is_infinite() {
            return Err(NumParseError::OutOfRange(s.to_string()));
        }
        let c = if rem.is_negative() { -c } else { c };
        let (cm, ce) = decompose(c);
        rem -= if ce >= 0 {
            BigRational::from_integer(cm << ce as usize)
        } else {
            BigRational::new(cm, BigInt::one() << (-ce) as usize)
        };
        parts.push(if neg { -c } else { c });
    }
    R::from_components(&parts).ok_or_else(bad)
}
