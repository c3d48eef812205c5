//! Random complex entries with controlled moduli.
//!
//! Every sample draws the argument `theta` first, uniform on `[0, 2pi)`,
//! then (unless `g = 0`) the modulus. Both are computed in double precision
//! and widened to the target type.

use std::f64::consts::TAU;
use std::str::FromStr;

use rand::Rng;

use super::Complex;
use crate::xreal::Real;

/// How the modulus `r` is spread over `[10^-g, 10^g]`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum ModulusDist {
    /// `r = 10^u`, `u` uniform on `[-g, g]`.
    #[default]
    Log,
    /// `r` uniform on `[10^-g, 10^g]`.
    Linear,
}

impl ModulusDist {
    pub fn token(self) -> &'static str {
        match self {
            ModulusDist::Log => "log",
            ModulusDist::Linear => "linear",
        }
    }
}

impl FromStr for ModulusDist {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "log" => Ok(ModulusDist::Log),
            "linear" => Ok(ModulusDist::Linear),
            _ => Err(format!(
                "unknown modulus distribution `{s}` (expected log or linear)"
            )),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, thiserror::Error)]
#[error("magnitude range g must be finite and non-negative, got {0}")]
pub struct RangeError(pub f64);

pub fn check_range(g: f64) -> Result<(), RangeError> {
    if g.is_finite() && g >= 0.0 {
        Ok(())
    } else {
        Err(RangeError(g))
    }
}

/// `(re, im)` of `r * exp(i theta)` in double precision.
pub fn sample_pair<G: Rng + ?Sized>(rng: &mut G, g: f64, dist: ModulusDist) -> (f64, f64) {
    let theta = rng.random_range(0.0..TAU);
    let r = if g == 0.0 {
        1.0
    } else {
        match dist {
            ModulusDist::Log => 10f64.powf(rng.random_range(-g..=g)),
            ModulusDist::Linear => rng.random_range(10f64.powf(-g)..=10f64.powf(g)),
        }
    };
    let (s, c) = theta.sin_cos();
    (r * c, r * s)
}

pub fn random_unit_complex<R: Real, G: Rng + ?Sized>(rng: &mut G) -> Complex<R> {
    let (re, im) = sample_pair(rng, 0.0, ModulusDist::Log);
    Complex::new(R::from_f64(re), R::from_f64(im))
}

pub fn random_ranged_complex<R: Real, G: Rng + ?Sized>(
    rng: &mut G,
    g: f64,
    dist: ModulusDist,
) -> Result<Complex<R>, RangeError> {
    check_range(g)?;
    let (re, im) = sample_pair(rng, g, dist);
    Ok(Complex::new(R::from_f64(re), R::from_f64(im)))
}
