//! Acceptance runner: one PASS/FAIL line per criterion.
//!
//! Exits nonzero when any criterion fails, except those listed in
//! `KNOWN_INCONSISTENT`, whose reference figures cannot all be reproduced
//! from their own inputs. Those still print FAIL.

mod common;

use std::process::ExitCode;
use std::time::Instant;

use common::{Cd, Cdd, Cqd};
use mgsqd::cfield::{ModulusDist, Scalar};
use mgsqd::expgen::{
    accuracy_point, gen_matrix, gen_rhs, recalibrated_dimension, time_factorizations, trial_rng,
    AccuracyRecord,
};
use mgsqd::parexec::{default_workers, Executor, Normalization};
use mgsqd::precision::PrecisionVisitor;
use mgsqd::qrls::{back_substitute, mgs_qr, ColMatrix};
use mgsqd::xreal::{DoubleDouble, QuadDouble};
use mgsqd::Precision;

const KNOWN_INCONSISTENT: &[(u32, &str)] = &[(
    6,
    "32*cbrt(78.8) = 137.2; the quoted 134 corresponds to a factor near 73.4",
)];

/// `(g, m_e, M_e)` reference rows at 32x32.
const CD_BANDS: [(f64, f64, f64); 5] = [
    (1.0, -14.5, -14.0),
    (4.0, -11.7, -11.0),
    (8.0, -7.8, -7.0),
    (12.0, -3.9, -3.1),
    (16.0, -0.2, 1.0),
];
const CDD_BANDS: [(f64, f64, f64); 10] = [
    (1.0, -30.6, -30.1),
    (4.0, -27.8, -27.1),
    (8.0, -24.0, -23.1),
    (12.0, -20.1, -19.2),
    (16.0, -16.4, -15.1),
    (17.0, -15.5, -14.1),
    (20.0, -12.6, -11.1),
    (24.0, -8.8, -7.2),
    (28.0, -4.7, -3.2),
    (32.0, -1.0, 0.8),
];
const CQD_BANDS: [(f64, f64, f64); 5] = [
    (17.0, -48.1, -47.1),
    (20.0, -45.1, -44.2),
    (24.0, -41.3, -40.2),
    (28.0, -37.7, -36.1),
    (32.0, -33.9, -32.2),
];

const TRIALS: usize = 100;
const DIM: usize = 32;

struct Runner {
    failed: Vec<u32>,
}

impl Runner {
    fn report(&mut self, id: u32, name: &str, pass: bool, detail: String) {
        let tag = if pass { "PASS" } else { "FAIL" };
        println!("{tag} [{id}] {name}: {detail}");
        if !pass {
            self.failed.push(id);
        }
    }
}

fn median(v: &[f64]) -> f64 {
    let mut s = v.to_vec();
    s.sort_by(f64::total_cmp);
    let k = s.len();
    if k % 2 == 1 {
        s[k / 2]
    } else {
        0.5 * (s[k / 2 - 1] + s[k / 2])
    }
}

/// Least squares slope of `y` against `x`.
fn slope(x: &[f64], y: &[f64]) -> f64 {
    let k = x.len() as f64;
    let (mx, my) = (x.iter().sum::<f64>() / k, y.iter().sum::<f64>() / k);
    let sxy: f64 = x.iter().zip(y).map(|(a, b)| (a - mx) * (b - my)).sum();
    let sxx: f64 = x.iter().map(|a| (a - mx) * (a - mx)).sum();
    sxy / sxx
}

struct Point {
    g: f64,
    trials: usize,
}

impl PrecisionVisitor for Point {
    type Output = AccuracyRecord;

    fn visit<S: Scalar>(self) -> AccuracyRecord {
        accuracy_point::<S>(
            DIM,
            DIM,
            self.g,
            self.trials,
            0,
            ModulusDist::Log,
            default_workers(),
        )
        .unwrap()
    }
}

fn point(p: Precision, g: f64) -> AccuracyRecord {
    p.dispatch(Point { g, trials: TRIALS })
}

fn bands(run: &mut Runner, sweeps: &mut Vec<(Precision, Vec<AccuracyRecord>)>) {
    let mut worst = Vec::new();
    let mut ok = true;
    for (p, rows, tol) in [
        (Precision::Cd, &CD_BANDS[..], 1.0),
        (Precision::Cdd, &CDD_BANDS[..], 1.0),
        (Precision::Cqd, &CQD_BANDS[..], 1.5),
    ] {
        let mut recs = Vec::new();
        let mut dev: f64 = 0.0;
        for &(g, lo, hi) in rows {
            let r = point(p, g);
            let d = (r.min_log_e - lo).abs().max((r.max_log_e - hi).abs());
            if d > tol || d.is_nan() || r.exclusions > 0 {
                ok = false;
                println!(
                    "    {} g={g}: m_e={:.2} M_e={:.2} (ref {lo}, {hi}) excl={}",
                    p.token(),
                    r.min_log_e,
                    r.max_log_e,
                    r.exclusions
                );
            }
            dev = dev.max(d);
            recs.push(r);
        }
        worst.push(format!("{} max dev {dev:.2} (tol {tol})", p.token()));
        sweeps.push((p, recs));
    }
    run.report(
        1,
        "accuracy bands, 100 trials at 32x32",
        ok,
        worst.join(", "),
    );
}

fn slopes(run: &mut Runner, sweeps: &[(Precision, Vec<AccuracyRecord>)]) {
    let mut ok = true;
    let mut parts = Vec::new();
    for (p, recs) in sweeps {
        let g: Vec<f64> = recs.iter().map(|r| r.g).collect();
        let med: Vec<f64> = recs.iter().map(|r| median(&r.log10_e)).collect();
        let s = slope(&g, &med);
        ok &= (s - 1.0).abs() <= 0.25;
        parts.push(format!("{} {s:.3}", p.token()));
    }
    run.report(
        2,
        "slope of median log10 e in g within 1.0 +- 0.25",
        ok,
        parts.join(", "),
    );
}

fn two_g_rule(run: &mut Runner) {
    let mut ok = true;
    let mut parts = Vec::new();
    for g in [4u32, 8, 14] {
        let p = Precision::smallest_with_digits(2 * g).unwrap();
        let r = point(p, g as f64);
        let good = r.log10_e.iter().filter(|&&e| e <= -(g as f64)).count();
        let frac = good as f64 / r.trials as f64;
        ok &= frac >= 0.95;
        parts.push(format!("g={g} {} {good}/{}", p.token(), r.trials));
    }
    run.report(
        3,
        "smallest precision with 2g digits gives log10 e <= -g in >= 95%",
        ok,
        parts.join(", "),
    );
}

fn cost_ordering(run: &mut Runner) {
    let reps = 1000;
    let d = time_factorizations::<f64>(DIM, DIM, reps, 0, None).unwrap();
    let cd = time_factorizations::<Cd>(DIM, DIM, reps, 0, None).unwrap();
    let cdd = time_factorizations::<Cdd>(DIM, DIM, reps, 0, None).unwrap();
    let cqd = time_factorizations::<Cqd>(DIM, DIM, reps, 0, None).unwrap();
    let ok = cd > d && cdd > 5.0 * cd && cqd > 4.0 * cdd;
    run.report(
        4,
        "cost ordering at 32x32, 1000 reps",
        ok,
        format!(
            "cd/d {:.2}, cdd/cd {:.2}, cqd/cdd {:.2} (factors vs d: {:.1}, {:.1}, {:.1})",
            cd / d,
            cdd / cd,
            cqd / cdd,
            cd / d,
            cdd / d,
            cqd / d
        ),
    );
}

/// Seconds per factorization: batches grow until one lasts a quarter
/// second, and the fastest of three such batches is kept.
fn per_rep_seconds(n: usize) -> f64 {
    let mut reps = 1;
    while time_factorizations::<Cd>(n, n, reps, 0, None).unwrap() < 0.25 {
        reps *= 2;
    }
    (0..3)
        .map(|_| time_factorizations::<Cd>(n, n, reps, 0, None).unwrap() / reps as f64)
        .fold(f64::INFINITY, f64::min)
}

fn scaling(run: &mut Runner) {
    let t: Vec<f64> = [64, 128, 256].iter().map(|&n| per_rep_seconds(n)).collect();
    let r1 = t[1] / t[0];
    let r2 = t[2] / t[1];
    let ok = (5.5..=10.5).contains(&r1) && (5.5..=10.5).contains(&r2);
    run.report(
        5,
        "cd time ratio on doubling n within [5.5, 10.5]",
        ok,
        format!("64->128 {r1:.2}, 128->256 {r2:.2}"),
    );
}

fn recalibration(run: &mut Runner) {
    let mut ok = true;
    let mut parts = Vec::new();
    for (f, want) in [(7.2, 62.0), (78.8, 134.0), (788.3, 296.0)] {
        let got = recalibrated_dimension(32.0, f);
        ok &= got.round() == want;
        parts.push(format!("{f} -> {got:.1} (want {want})"));
    }
    run.report(6, "recalibrated dimensions", ok, parts.join(", "));
}

fn bits<S: Scalar>(xs: &[S]) -> Vec<u64> {
    xs.iter()
        .flat_map(|x| x.to_parts())
        .map(f64::to_bits)
        .collect()
}

/// Cases that differ from the sequential result.
fn mismatches<S: Scalar>(execs: &[Executor]) -> usize {
    let mut bad = 0;
    for n in [8, 32, 33, 64] {
        for seed in 0..20 {
            let a: ColMatrix<S> =
                gen_matrix(&mut trial_rng(seed, 0), n, n, 2.0, ModulusDist::Log).unwrap();
            let y = gen_rhs::<S>(&mut trial_rng(seed, 1), n, 1.0, ModulusDist::Log).unwrap();
            let seq = mgs_qr(&a).unwrap();
            let q = bits(seq.q.as_slice());
            let r = bits(seq.r.to_dense().as_slice());
            let x = bits(&back_substitute(&seq.r, &y).unwrap());
            for e in execs {
                let f = e.par_mgs_qr(&a).unwrap();
                if bits(f.q.as_slice()) != q || bits(f.r.to_dense().as_slice()) != r {
                    bad += 1;
                }
                if bits(&e.par_back_substitute(&seq.r, &y).unwrap()) != x {
                    bad += 1;
                }
            }
        }
    }
    bad
}

fn determinism(run: &mut Runner) {
    let execs: Vec<Executor> = [1, 2, 4, 8]
        .into_iter()
        .flat_map(|w| {
            [Normalization::Designated, Normalization::Redundant]
                .map(|m| Executor::new(w).unwrap().with_normalization(m))
        })
        .collect();
    let bad = mismatches::<f64>(&execs)
        + mismatches::<Cd>(&execs)
        + mismatches::<Cdd>(&execs)
        + mismatches::<Cqd>(&execs);
    let cases = 4 * 4 * 20 * execs.len() * 2;
    run.report(
        7,
        "parallel factorization and back substitution bitwise equal to sequential",
        bad == 0,
        format!("{bad} mismatches in {cases} comparisons"),
    );
}

fn oracles(run: &mut Runner) {
    let eft = common::two_sum_failures(1_000_000, 11).len()
        + common::two_prod_failures(1_000_000, 12).len();
    let dd = common::arith_failures::<DoubleDouble>(100_000, 21, common::rand_dd, 104, None).len();
    let qd = common::arith_failures::<QuadDouble>(100_000, 22, common::rand_qd, 212, None).len();

    let mut hh: f64 = 0.0;
    let mut mgs: f64 = 0.0;
    for (seed, (m, n)) in [(8, 5), (16, 16), (12, 7), (16, 9), (5, 5), (20, 16)]
        .into_iter()
        .enumerate()
    {
        let (h, g) = common::householder_and_mgs_residuals(seed as u64, m, n);
        hh = hh.max(h);
        mgs = mgs.max(g);
    }

    let mut lsq: f64 = 0.0;
    for seed in 0..50 {
        lsq = lsq
            .max(common::lsq_oracle_ulps::<Cd>(seed, 6, 4))
            .max(common::lsq_oracle_ulps::<Cdd>(seed, 6, 4))
            .max(common::lsq_oracle_ulps::<Cqd>(seed, 6, 4));
    }

    let mut pyth: f64 = 0.0;
    for seed in 0..30 {
        for (m, n) in [(6, 4), (10, 3), (9, 8)] {
            pyth = pyth
                .max(common::pythagoras_gap_ulps::<f64>(seed, m, n))
                .max(common::pythagoras_gap_ulps::<Cd>(seed, m, n))
                .max(common::pythagoras_gap_ulps::<Cdd>(seed, m, n))
                .max(common::pythagoras_gap_ulps::<Cqd>(seed, m, n));
        }
    }

    let ok =
        eft == 0 && dd == 0 && qd == 0 && hh <= 1e-13 && mgs <= 1e-13 && lsq <= 1e5 && pyth <= 16.0;
    run.report(
        8,
        "oracle suite",
        ok,
        format!(
            "eft failures {eft}, dd {dd}, qd {qd}, householder {hh:.1e}, mgs {mgs:.1e}, \
             lsq {lsq:.1} ulps, pythagoras {pyth:.2} ulps"
        ),
    );
}

fn speedup() {
    let reps = 5;
    let one = time_factorizations::<f64>(256, 256, reps, 0, Some(1)).unwrap();
    let eight = time_factorizations::<f64>(256, 256, reps, 0, Some(8)).unwrap();
    let verdict = if eight < 0.5 * one { "met" } else { "not met" };
    println!(
        "INFO [9] speedup at n=256 double: t(8)/t(1) = {:.3} ({verdict}; {} hardware threads)",
        eight / one,
        default_workers()
    );
}

fn main() -> ExitCode {
    let start = Instant::now();
    let mut run = Runner { failed: Vec::new() };
    let mut sweeps = Vec::new();
    bands(&mut run, &mut sweeps);
    slopes(&mut run, &sweeps);
    two_g_rule(&mut run);
    cost_ordering(&mut run);
    scaling(&mut run);
    recalibration(&mut run);
    determinism(&mut run);
    oracles(&mut run);
    speedup();

    let blocking: Vec<u32> = run
        .failed
        .iter()
        .copied()
        .filter(|id| !KNOWN_INCONSISTENT.iter().any(|(k, _)| k == id))
        .collect();
    for (id, why) in KNOWN_INCONSISTENT {
        if run.failed.contains(id) {
            println!("note [{id}]: {why}");
        }
    }
    println!(
        "acceptance: {} of 8 passed, {} blocking failures, {:.0}s",
        8 - run.failed.len(),
        blocking.len(),
        start.elapsed().as_secs_f64()
    );
    if blocking.is_empty() {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
