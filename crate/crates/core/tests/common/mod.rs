//! Generators and independent reference computations shared by the oracle
//! tests and the acceptance runner.
#![allow(dead_code)]

use mgsqd::cfield::{Complex, ModulusDist, Scalar};
use mgsqd::expgen::{gen_matrix, gen_rhs, trial_rng};
use mgsqd::qrls::{lsq_solve, mgs_qr, ColMatrix};
use mgsqd::xreal::eft::{two_prod_dekker, two_prod_fma, two_sum};
use mgsqd::xreal::{DoubleDouble, QuadDouble, Real};
use mgsqd_oracle::{normal_equations_solve, rational_abs_diff_f64, ExactComplex, ExactDyadic};
use num_traits::ToPrimitive;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub type Cd = Complex<f64>;
pub type Cdd = Complex<DoubleDouble>;
pub type Cqd = Complex<QuadDouble>;

pub fn exact<R: Real>(x: R) -> ExactDyadic {
    ExactDyadic::sum(&x.components())
}

pub fn exact_entry<S: Scalar>(s: S) -> ExactComplex {
    let p = s.to_parts();
    if S::PARTS == 1 {
        ExactComplex::from_parts(&p, &[])
    } else {
        let (re, im) = p.split_at(p.len() / 2);
        ExactComplex::from_parts(re, im)
    }
}

pub fn rand_double(rng: &mut ChaCha8Rng, lo: i32, hi: i32) -> f64 {
    let m: f64 = rng.random_range(1.0..2.0);
    let e = rng.random_range(lo..=hi);
    let s = if rng.random::<bool>() { -1.0 } else { 1.0 };
    s * m * 2f64.powi(e)
}

pub fn unit(rng: &mut ChaCha8Rng) -> f64 {
    rng.random_range(-1.0..1.0)
}

pub fn rand_dd(rng: &mut ChaCha8Rng) -> DoubleDouble {
    let h = rand_double(rng, -60, 60);
    DoubleDouble::new(h, h * unit(rng) * 2f64.powi(-53))
}

pub fn rand_qd(rng: &mut ChaCha8Rng) -> QuadDouble {
    let c0 = rand_double(rng, -60, 60);
    let c1 = c0 * unit(rng) * 2f64.powi(-53);
    let c2 = c1 * unit(rng) * 2f64.powi(-53);
    let c3 = c2 * unit(rng) * 2f64.powi(-53);
    QuadDouble::new(c0, c1, c2, c3)
}

/// Second operand: independent most of the time, a near-negation of `a`
/// otherwise so that addition cancels.
fn partner<R: Real>(rng: &mut ChaCha8Rng, a: R, fresh: R) -> R {
    if rng.random_range(0..8) == 0 {
        let nudge = a.to_f64() * unit(rng) * 2f64.powi(-rng.random_range(20..150));
        R::ZERO - a + R::from_f64(nudge)
    } else {
        fresh
    }
}

/// Pairs on which `two_sum` is not exact.
pub fn two_sum_failures(pairs: usize, seed: u64) -> Vec<(f64, f64)> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut bad = Vec::new();
    for i in 0..pairs {
        let a = rand_double(&mut rng, -1070, 1020);
        let b = if i % 4 == 0 {
            -a * (1.0 + unit(&mut rng) * 2f64.powi(-30))
        } else {
            rand_double(&mut rng, -1070, 1020)
        };
        let (s, e) = two_sum(a, b);
        if s != a + b || ExactDyadic::sum(&[s, e]) != ExactDyadic::sum(&[a, b]) {
            bad.push((a, b));
        }
    }
    bad
}

/// Pairs on which either product transform is not exact.
pub fn two_prod_failures(pairs: usize, seed: u64) -> Vec<(f64, f64)> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut bad = Vec::new();
    for _ in 0..pairs {
        let a = rand_double(&mut rng, -450, 450);
        let b = rand_double(&mut rng, -450, 450);
        let want = ExactDyadic::from_f64(a) * ExactDyadic::from_f64(b);
        for (p, e) in [two_prod_fma(a, b), two_prod_dekker(a, b)] {
            if p != a * b || ExactDyadic::sum(&[p, e]) != want {
                bad.push((a, b));
            }
        }
    }
    bad
}

/// Operations outside the bounds: `add_mul_bits` for sums and products, and
/// `div_bits` for `q * b` against `a`. When `div_bits` is `None` division is
/// not checked.
pub fn arith_failures<R: Real>(
    pairs: usize,
    seed: u64,
    gen: fn(&mut ChaCha8Rng) -> R,
    add_mul_bits: i64,
    div_bits: Option<i64>,
) -> Vec<String> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut bad = Vec::new();
    for _ in 0..pairs {
        let a = gen(&mut rng);
        let fresh = gen(&mut rng);
        let b = partner(&mut rng, a, fresh);
        let (ea, eb) = (exact(a), exact(b));
        if !ExactDyadic::rel_error_within(&exact(a + b), &(ea.clone() + eb.clone()), add_mul_bits) {
            bad.push(format!("{} add {a:?} {b:?}", R::NAME));
        }
        if !ExactDyadic::rel_error_within(&exact(a * b), &(ea.clone() * eb.clone()), add_mul_bits) {
            bad.push(format!("{} mul {a:?} {b:?}", R::NAME));
        }
        if let Some(bits) = div_bits {
            if !ExactDyadic::rel_error_within(&(exact(a / b) * eb), &ea, bits) {
                bad.push(format!("{} div {a:?} {b:?}", R::NAME));
            }
        }
    }
    bad
}

pub fn random<S: Scalar>(seed: u64, m: usize, n: usize, g: f64) -> ColMatrix<S> {
    gen_matrix(&mut trial_rng(seed, 0), m, n, g, ModulusDist::Log).unwrap()
}

pub fn frobenius(a: &ColMatrix<Cd>) -> f64 {
    a.as_slice()
        .iter()
        .map(|z| z.norm_sqr())
        .sum::<f64>()
        .sqrt()
}

pub fn residual_frobenius(a: &ColMatrix<Cd>, q: &ColMatrix<Cd>, r: &ColMatrix<Cd>) -> f64 {
    let mut s = 0.0;
    for j in 0..a.cols() {
        for i in 0..a.rows() {
            let mut qr = Cd::ZERO;
            for l in 0..r.rows() {
                qr += q.get(i, l) * r.get(l, j);
            }
            s += (a.get(i, j) - qr).norm_sqr();
        }
    }
    s.sqrt()
}

/// Thin QR by Householder reflections, written without any of the library's
/// factorization code.
pub fn householder(a: &ColMatrix<Cd>) -> (ColMatrix<Cd>, ColMatrix<Cd>) {
    let (m, n) = (a.rows(), a.cols());
    let mut w = a.clone();
    let mut vs: Vec<Vec<Cd>> = Vec::new();
    for k in 0..n {
        let x: Vec<Cd> = (k..m).map(|i| w.get(i, k)).collect();
        let norm = x.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        let phase = if x[0].abs() == 0.0 {
            Cd::ONE
        } else {
            x[0].scale(1.0 / x[0].abs())
        };
        let alpha = -phase.scale(norm);
        let mut v = x.clone();
        v[0] -= alpha;
        let vn = v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        if vn > 0.0 {
            for z in &mut v {
                *z = z.scale(1.0 / vn);
            }
        }
        for j in k..n {
            let mut d = Cd::ZERO;
            for (t, vi) in v.iter().enumerate() {
                d += vi.conj() * w.get(k + t, j);
            }
            for (t, vi) in v.iter().enumerate() {
                let upd = w.get(k + t, j) - (*vi * d).scale(2.0);
                w.set(k + t, j, upd);
            }
        }
        vs.push(v);
    }
    let r = ColMatrix::from_fn(n, n, |i, j| if i <= j { w.get(i, j) } else { Cd::ZERO });
    let mut q = ColMatrix::from_fn(m, n, |i, j| if i == j { Cd::ONE } else { Cd::ZERO });
    for k in (0..n).rev() {
        let v = &vs[k];
        for j in 0..n {
            let mut d = Cd::ZERO;
            for (t, vi) in v.iter().enumerate() {
                d += vi.conj() * q.get(k + t, j);
            }
            for (t, vi) in v.iter().enumerate() {
                let upd = q.get(k + t, j) - (*vi * d).scale(2.0);
                q.set(k + t, j, upd);
            }
        }
    }
    (q, r)
}

/// `(||A - QR||_F / ||A||_F)` for the Householder oracle and for MGS.
pub fn householder_and_mgs_residuals(seed: u64, m: usize, n: usize) -> (f64, f64) {
    let a: ColMatrix<Cd> = random(seed, m, n, 1.0);
    let norm = frobenius(&a);
    let (hq, hr) = householder(&a);
    let f = mgs_qr(&a).unwrap();
    (
        residual_frobenius(&a, &hq, &hr) / norm,
        residual_frobenius(&a, &f.q, &f.r.to_dense()) / norm,
    )
}

pub fn rows_exact<S: Scalar>(a: &ColMatrix<S>) -> Vec<Vec<ExactComplex>> {
    (0..a.rows())
        .map(|i| (0..a.cols()).map(|j| exact_entry(a.get(i, j))).collect())
        .collect()
}

/// Relative distance of the least squares solution from the exact solution of
/// the normal equations, in units of the working precision.
pub fn lsq_oracle_ulps<S: Scalar>(seed: u64, m: usize, n: usize) -> f64 {
    let a: ColMatrix<S> = random(seed, m, n, 1.0);
    let b = gen_rhs::<S>(&mut trial_rng(seed, 1), m, 1.0, ModulusDist::Log).unwrap();
    let s = lsq_solve(&a, &b).unwrap();
    let be: Vec<_> = b.iter().map(|&v| exact_entry(v)).collect();
    let want = normal_equations_solve(&rows_exact(&a), &be).unwrap();
    let (mut d, mut norm) = (0.0, 0.0);
    for (got, w) in s.x.iter().zip(&want) {
        d += exact_entry(*got).sub(w).norm_sqr().to_f64().unwrap();
        norm += w.norm_sqr().to_f64().unwrap();
    }
    (d / norm).sqrt() / <S::Real as Real>::EPS
}

/// `| ||b - Ax||^2 - (||Rx - y||^2 + z^2) |` over `||b||^2`, in units of the
/// working precision, evaluated exactly on the computed quantities.
pub fn pythagoras_gap_ulps<S: Scalar>(seed: u64, m: usize, n: usize) -> f64 {
    let a: ColMatrix<S> = random(seed, m, n, 1.0);
    let b = gen_rhs::<S>(&mut trial_rng(seed, 1), m, 1.0, ModulusDist::Log).unwrap();
    let s = lsq_solve(&a, &b).unwrap();
    let f = mgs_qr(&a.augmented(&b).unwrap()).unwrap();

    let x: Vec<_> = s.x.iter().map(|&v| exact_entry(v)).collect();
    let mut lhs = ExactComplex::zero().re;
    let mut bb = lhs.clone();
    for i in 0..m {
        let mut r = exact_entry(b[i]);
        for (j, xj) in x.iter().enumerate() {
            r = r.sub(&exact_entry(a.get(i, j)).mul(xj));
        }
        lhs += r.norm_sqr();
        bb += exact_entry(b[i]).norm_sqr();
    }
    let mut rhs = exact_entry(f.r.get(n, n)).norm_sqr();
    for k in 0..n {
        let mut t = ExactComplex::zero().sub(&exact_entry(f.r.get(k, n)));
        for (j, xj) in x.iter().enumerate().skip(k) {
            t = t.add(&exact_entry(f.r.get(k, j)).mul(xj));
        }
        rhs += t.norm_sqr();
    }
    rational_abs_diff_f64(&lhs, &rhs) / bb.to_f64().unwrap() / <S::Real as Real>::EPS
}
