//! Matrix files.
//!
//! The first line is `m n precision`. Each following line holds one entry,
//! in column-major order, as whitespace-separated hex floats: the real
//! components, then the imaginary ones. Blank lines are ignored. A file may
//! be read at a wider precision than it was written in, never a narrower one.

use super::{ColMatrix, UpperTri};
use crate::cfield::Scalar;
use crate::xreal::hex::{format_hex, parse_hex};
use crate::xreal::Real;
use crate::{Error, Precision};

pub fn write_matrix<S: Scalar>(a: &ColMatrix<S>) -> String {
    let mut out = format!("{} {} {}\n", a.rows(), a.cols(), S::NAME);
    for x in a.as_slice() {
        let parts: Vec<String> = x.to_parts().into_iter().map(format_hex).collect();
        out.push_str(&parts.join(" "));
        out.push('\n');
    }
    out
}

pub fn write_upper<S: Scalar>(r: &UpperTri<S>) -> String {
    write_matrix(&r.to_dense())
}

fn parse_err(line: usize, msg: impl Into<String>) -> Error {
    Error::Parse {
        line,
        msg: msg.into(),
    }
}

/// Sum of already separated components in the target real type; exact when
/// the target has at least as many components.
fn gather<R: Real>(parts: &[f64]) -> R {
    if parts.len() == R::COMPONENTS {
        if let Some(x) = R::from_components(parts) {
            return x;
        }
    }
    parts.iter().fold(R::ZERO, |acc, &p| acc + R::from_f64(p))
}

fn widen_entry<S: Scalar>(file: Precision, parts: &[f64]) -> Option<S> {
    if file == Precision::of::<S>() {
        return S::from_parts(parts);
    }
    let (re, im) = if file.is_complex() {
        parts.split_at(parts.len() / 2)
    } else {
        (parts, &[][..])
    };
    Some(S::from_re_im(gather(re), gather(im)))
}

/// Parses the header line into `(m, n, precision)`.
pub fn read_header(line: &str) -> Result<(usize, usize, Precision), Error> {
    let fields: Vec<&str> = line.split_whitespace().collect();
    let [m, n, p] = fields[..] else {
        return Err(parse_err(1, "header must be `m n precision`"));
    };
    let m: usize = m
        .parse()
        .map_err(|_| parse_err(1, format!("bad row count `{m}`")))?;
    let n: usize = n
        .parse()
        .map_err(|_| parse_err(1, format!("bad column count `{n}`")))?;
    let p: Precision = p.parse().map_err(|e: String| parse_err(1, e))?;
    Ok((m, n, p))
}

pub fn read_matrix<S: Scalar>(text: &str) -> Result<ColMatrix<S>, Error> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty());
    let (_, header) = lines.next().ok_or_else(|| parse_err(1, "empty file"))?;
    let (m, n, file) = read_header(header)?;
    let target = Precision::of::<S>();
    if !file.widens_to(target) {
        return Err(Error::Precision(format!(
            "file holds {file} data, which does not widen to {target}"
        )));
    }
    let count = m
        .checked_mul(n)
        .ok_or_else(|| parse_err(1, "dimensions too large"))?;
    let mut data = Vec::with_capacity(count);
    let mut last_line = 1;
    for (no, line) in lines {
        last_line = no;
        if data.len() == count {
            return Err(parse_err(no, format!("more than {count} entries")));
        }
        let tokens: Vec<&str> = line.split_whitespace().collect();
        if tokens.len() != file.parts() {
            return Err(parse_err(
                no,
                format!(
                    "expected {} hex floats, found {}",
                    file.parts(),
                    tokens.len()
                ),
            ));
        }
        let parts = tokens
            .iter()
            .map(|t| parse_hex(t))
            .collect::<Result<Vec<_>, _>>()
            .map_err(|e| parse_err(no, e.to_string()))?;
        if parts.iter().any(|p| !p.is_finite()) {
            return Err(parse_err(no, "non-finite entry"));
        }
        let x = widen_entry::<S>(file, &parts).ok_or_else(|| parse_err(no, "malformed entry"))?;
        data.push(x);
    }
    if data.len() != count {
        return Err(parse_err(
            last_line,
            format!("expected {count} entries, found {}", data.len()),
        ));
    }
    ColMatrix::from_col_major(m, n, data)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cfield::Complex;
    use crate::xreal::DoubleDouble;

    #[test]
    fn identity_text() {
        let a = ColMatrix::<Complex<f64>>::identity(2);
        let text = write_matrix(&a);
        assert_eq!(
            text,
            "2 2 cd\n0x1p+0 0x0p+0\n0x0p+0 0x0p+0\n0x0p+0 0x0p+0\n0x1p+0 0x0p+0\n"
        );
        assert_eq!(read_matrix::<Complex<f64>>(&text).unwrap(), a);
    }

    #[test]
    fn widening_only() {
        let text = "1 1 cd\n0x1.8p+0 -0x1p-3\n";
        let w: ColMatrix<Complex<DoubleDouble>> = read_matrix(text).unwrap();
        assert_eq!(w.get(0, 0).re, DoubleDouble::from_f64(1.5));
        assert_eq!(w.get(0, 0).im, DoubleDouble::from_f64(-0.125));
        let narrow = "1 1 cdd\n0x1p+0 0x0p+0 0x0p+0 0x0p+0\n";
        assert!(matches!(
            read_matrix::<Complex<f64>>(narrow),
            Err(Error::Precision(_))
        ));
    }

    #[test]
    fn errors_carry_line_numbers() {
        let text = "2 1 d\n0x1p+0\n0x1.zp+0\n";
        match read_matrix::<f64>(text) {
            Err(Error::Parse { line, .. }) => assert_eq!(line, 3),
            other => panic!("{other:?}"),
        }
        assert!(matches!(
            read_matrix::<f64>("2 1 d\n0x1p+0\n"),
            Err(Error::Parse { line: 2, .. })
        ));
        assert!(matches!(
            read_matrix::<f64>("2 1 q\n"),
            Err(Error::Parse { line: 1, .. })
        ));
    }
}
