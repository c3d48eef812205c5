//! Bit-exact hexadecimal float text.
//!
//! Normal doubles print as `0x1.<hex>p<exp>`, subnormals as
//! `0x0.<hex>p-1022` and zero as `0x0p+0`, with trailing zero digits
//! trimmed. The parser accepts any hex float that is exactly representable
//! and rejects the rest instead of rounding.

use super::{ldexp, NumParseError, Real};

pub fn format_hex(x: f64) -> String {
    if x.is_nan() {
        return "nan".into();
    }
    let sign = if x.is_sign_negative() { "-" } else { "" };
    if x.is_infinite() {
        return format!("{sign}inf");
    }
    let bits = x.to_bits();
    let biased = ((bits >> 52) & 0x7ff) as i32;
    let frac = bits & ((1u64 << 52) - 1);
    if biased == 0 && frac == 0 {
        return format!("{sign}0x0p+0");
    }
    let (lead, exp) = if biased == 0 {
        (0, -1022)
    } else {
        (1, biased - 1023)
    };
    let mut digits = format!("{frac:013x}");
    while digits.ends_with('0') {
        digits.pop();
    }
    let dot = if digits.is_empty() { "" } else { "." };
    format!("{sign}0x{lead}{dot}{digits}p{exp:+}")
}

pub fn parse_hex(s: &str) -> Result<f64, NumParseError> {
    let bad = || NumParseError::Hex(s.to_string());
    let t = s.trim();
    let (neg, body) = match t.as_bytes().first() {
        Some(b'-') => (true, &t[1..]),
        Some(b'+') => (false, &t[1..]),
        _ => (false, t),
    };
    match body {
        "inf" => {
            return Ok(if neg {
                f64::NEG_INFINITY
            } else {
                f64::INFINITY
            })
        }
        "nan" => return Ok(f64::NAN),
        _ => {}
    }
    let body = body
        .strip_prefix("0x")
        .or_else(|| body.strip_prefix("0X"))
        .ok_or_else(bad)?;
    let (mant, exp) = body.split_once(['p', 'P']).ok_or_else(bad)?;
    if exp.is_empty() || exp.starts_with("++") || exp.starts_with("+-") {
        return Err(bad());
    }
    let exp: i64 = exp.parse().map_err(|_| bad())?;
    let (int_part, frac_part) = mant.split_once('.').unwrap_or((mant, ""));
    if int_part.is_empty() && frac_part.is_empty() {
        return Err(bad());
    }

    // Accumulate significant hex digits; at most 32 fit in a u128.
    let mut m: u128 = 0;
    let mut used = 0usize;
    let mut frac_digits = 0i64;
    for (i, c) in int_part.chars().chain(frac_part.chars()).enumerate() {
        let d = c.to_digit(16).ok_or_else(bad)? as u128;
        if i >= int_part.len() {
            frac_digits += 1;
        }
        if m == 0 && d == 0 {
            continue;
        }
        if used == 32 {
            if d != 0 {
                return Err(NumParseError::Inexact(s.to_string()));
            }
            // a trailing zero still scales the value
            if i < int_part.len() {
                return Err(NumParseError::OutOfRange(s.to_string()));
            }
            frac_digits -= 1;
            continue;
        }
        m = m * 16 + d;
        used += 1;
    }
    let signed = |v: f64| if neg { -v } else { v };
    if m == 0 {
        return Ok(signed(0.0));
    }
    let tz = m.trailing_zeros() as i64;
    let m = m >> tz;
    let e2 = exp.checked_sub(4 * frac_digits).ok_or_else(bad)? + tz;
    let bits = 128 - m.leading_zeros() as i64;
    let top = e2 + bits - 1;
    if bits > 53 || e2 < -1074 {
        return Err(NumParseError::Inexact(s.to_string()));
    }
    if top > 1023 {
        return Err(NumParseError::OutOfRange(s.to_string()));
    }
    Ok(signed(ldexp(m as f64, e2 as i32)))
}

/// Components of `x` as space-separated hex floats.
pub fn format_components<R: Real>(x: R) -> String {
    x.components()
        .into_iter()
        .map(format_hex)
        .collect::<Vec<_>>()
        .join(" ")
}

/// Reads exactly [`Real::COMPONENTS`] hex floats into a value.
pub fn parse_components<'a, R: Real>(
    tokens: impl IntoIterator<Item = &'a str>,
) -> Result<R, NumParseError> {
    let parts = tokens
        .into_iter()
        .map(parse_hex)
        .collect::<Result<Vec<_>, _>>()?;
    R::from_components(&parts).ok_or(NumParseError::Components {
        expected: R::COMPONENTS,
        found: parts.len(),
    })
}
