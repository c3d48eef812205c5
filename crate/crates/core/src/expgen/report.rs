//! CSV tables. Numbers use the shortest decimal that reads back to the same
//! double; an absent factor is an empty field.

use super::accuracy::AccuracyRecord;
use super::bench::BenchRecord;
use crate::{Error, Precision};

pub const ACCURACY_HEADER: [&str; 11] = [
    "kind",
    "precision",
    "m",
    "n",
    "g",
    "trials",
    "exclusions",
    "m_e",
    "M_e",
    "D_e",
    "wall_seconds",
];

pub const BENCH_HEADER: [&str; 7] = [
    "kind",
    "precision",
    "m",
    "n",
    "reps",
    "wall_seconds",
    "factor_vs_baseline",
];

/// One accuracy row as it appears in the CSV.
#[derive(Clone, Debug, PartialEq)]
pub struct AccuracyRow {
    pub precision: Precision,
    pub m: usize,
    pub n: usize,
    pub g: f64,
    pub trials: usize,
    pub exclusions: usize,
    pub min_log_e: f64,
    pub max_log_e: f64,
    pub d_e: f64,
    pub wall_seconds: f64,
}

impl From<&AccuracyRecord> for AccuracyRow {
    fn from(r: &AccuracyRecord) -> Self {
        Self {
            precision: r.precision,
            m: r.m,
            n: r.n,
            g: r.g,
            trials: r.trials,
            exclusions: r.exclusions,
            min_log_e: r.min_log_e,
            max_log_e: r.max_log_e,
            d_e: r.d_e,
            wall_seconds: r.wall_seconds,
        }
    }
}

fn csv_err(e: csv::Error) -> Error {
    let line = e.position().map_or(0, |p| p.line() as usize);
    Error::Parse {
        line,
        msg: e.to_string(),
    }
}

fn finish(w: csv::Writer<Vec<u8>>) -> String {
    let bytes = w.into_inner().expect("writing to memory cannot fail");
    String::from_utf8(bytes).expect("csv output is utf-8")
}

pub fn accuracy_csv(records: &[AccuracyRecord]) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(ACCURACY_HEADER).expect("in-memory write");
    for r in records {
        let row = AccuracyRow::from(r);
        w.write_record([
            "accuracy".to_string(),
            row.precision.to_string(),
            row.m.to_string(),
            row.n.to_string(),
            row.g.to_string(),
            row.trials.to_string(),
            row.exclusions.to_string(),
            row.min_log_e.to_string(),
            row.max_log_e.to_string(),
            row.d_e.to_string(),
            row.wall_seconds.to_string(),
        ])
        .expect("in-memory write");
    }
    finish(w)
}

pub fn bench_csv(records: &[BenchRecord]) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(BENCH_HEADER).expect("in-memory write");
    for r in records {
        w.write_record([
            r.kind.clone(),
            r.precision.to_string(),
            r.m.to_string(),
            r.n.to_string(),
            r.reps.to_string(),
            r.wall_seconds.to_string(),
            r.factor_vs_baseline
                .map_or(String::new(), |f| f.to_string()),
        ])
        .expect("in-memory write");
    }
    finish(w)
}

fn field<T: std::str::FromStr>(rec: &csv::StringRecord, i: usize, line: usize) -> Result<T, Error> {
    let raw = rec.get(i).unwrap_or("");
    raw.parse().map_err(|_| Error::Parse {
        line,
        msg: format!("bad value `{raw}` in column {}", i + 1),
    })
}

fn check_header(rdr: &mut csv::Reader<&[u8]>, want: &[&str]) -> Result<(), Error> {
    let got = rdr.headers().map_err(csv_err)?;
    if got.iter().ne(want.iter().copied()) {
        return Err(Error::Parse {
            line: 1,
            msg: format!("expected header `{}`", want.join(",")),
        });
    }
    Ok(())
}

pub fn parse_accuracy_csv(text: &str) -> Result<Vec<AccuracyRow>, Error> {
    let mut rdr = csv::Reader::from_reader(text.as_bytes());
    check_header(&mut rdr, &ACCURACY_HEADER)?;
    let mut out = Vec::new();
    for rec in rdr.records() {
        let rec = rec.map_err(csv_err)?;
        let line = rec.position().map_or(0, |p| p.line() as usize);
        out.push(AccuracyRow {
            precision: field(&rec, 1, line)?,
            m: field(&rec, 2, line)?,
            n: field(&rec, 3, line)?,
            g: field(&rec, 4, line)?,
            trials: field(&rec, 5, line)?,
            exclusions: field(&rec, 6, line)?,
            min_log_e: field(&rec, 7, line)?,
            max_log_e: field(&rec, 8, line)?,
            d_e: field(&rec, 9, line)?,
            wall_seconds: field(&rec, 10, line)?,
        });
    }
    Ok(out)
}

pub fn parse_bench_csv(text: &str) -> Result<Vec<BenchRecord>, Error> {
    let mut rdr = csv::Reader::from_reader(text.as_bytes());
    check_header(&mut rdr, &BENCH_HEADER)?;
    let mut out = Vec::new();
    for rec in rdr.records() {
        let rec = rec.map_err(csv_err)?;
        let line = rec.position().map_or(0, |p| p.line() as usize);
        let factor = match rec.get(6).unwrap_or("") {
            "" => None,
            _ => Some(field(&rec, 6, line)?),
        };
        out.push(BenchRecord {
            kind: field(&rec, 0, line)?,
            precision: field(&rec, 1, line)?,
            m: field(&rec, 2, line)?,
            n: field(&rec, 3, line)?,
            reps: field(&rec, 4, line)?,
            wall_seconds: field(&rec, 5, line)?,
            factor_vs_baseline: factor,
        });
    }
    Ok(out)
}
