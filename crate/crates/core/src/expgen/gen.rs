use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::cfield::random::{check_range, sample_pair};
use crate::cfield::{CVector, ModulusDist, Scalar};
use crate::qrls::ColMatrix;
use crate::Error;

/// Independent stream `trial` of the generator seeded with `seed`.
pub fn trial_rng(seed: u64, trial: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(trial);
    rng
}

/// Random `m x n` matrix, entries drawn in column-major order.
pub fn gen_matrix<S: Scalar>(
    rng: &mut ChaCha8Rng,
    m: usize,
    n: usize,
    g: f64,
    dist: ModulusDist,
) -> Result<ColMatrix<S>, Error> {
    check_range(g)?;
    Ok(ColMatrix::from_fn(m, n, |_, _| {
        let (re, im) = sample_pair(rng, g, dist);
        S::from_f64_pair(re, im)
    }))
}

pub fn gen_rhs<S: Scalar>(
    rng: &mut ChaCha8Rng,
    m: usize,
    g: f64,
    dist: ModulusDist,
) -> Result<CVector<S>, Error> {
    check_range(g)?;
    Ok((0..m)
        .map(|_| {
            let (re, im) = sample_pair(rng, g, dist);
            S::from_f64_pair(re, im)
        })
        .collect::<Vec<_>>()
        .into())
}
