//! Seeded randomness. Every stochastic routine owns a `GraphRng` built from an
//! explicit 64-bit seed; there is no global generator.
//!
//! The generator is PCG-XSL-RR 128/64 (`rand_pcg::Pcg64`), seeded through
//! `SeedableRng::seed_from_u64`. Uniform `f64` draws take the top 53 bits of
//! one `next_u64`.

use rand::RngExt;
use rand_distr::StandardNormal;

use crate::linalg::{c, CVector, C64};

pub type GraphRng = rand_pcg::Pcg64;

/// Seed for trial `trial` of a run seeded with `seed`.
pub fn trial_seed(seed: u64, trial: u64) -> u64 {
    seed ^ trial
}

/// Circular complex Gaussian `CN(0, sigma^2)`: real and imaginary parts are
/// independent `N(0, sigma^2 / 2)`.
pub fn complex_gaussian(rng: &mut GraphRng, sigma: f64) -> C64 {
    let s = sigma / std::f64::consts::SQRT_2;
    let re: f64 = rng.sample(StandardNormal);
    let im: f64 = rng.sample(StandardNormal);
    c(s * re, s * im)
}

pub fn real_gaussian(rng: &mut GraphRng, sigma: f64) -> C64 {
    let re: f64 = rng.sample(StandardNormal);
    c(sigma * re, 0.0)
}

pub fn complex_gaussian_vector(rng: &mut GraphRng, len: usize, sigma: f64) -> CVector {
    CVector::from_fn(len, |_, _| complex_gaussian(rng, sigma))
}

pub fn real_gaussian_vector(rng: &mut GraphRng, len: usize, sigma: f64) -> CVector {
    CVector::from_fn(len, |_, _| real_gaussian(rng, sigma))
}
