use std::f64::consts::TAU;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Generator used for every Monte Carlo stream.
pub type StreamRng = ChaCha8Rng;

/// SplitMix64 finalizer.
#[inline]
pub fn mix64(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Seed of worker `worker` derived from the master seed.
pub fn worker_seed(master: u64, worker: u64) -> u64 {
    mix64(master ^ mix64(worker))
}

pub fn worker_rng(master: u64, worker: u64) -> StreamRng {
    StreamRng::seed_from_u64(worker_seed(master, worker))
}

/// Uniform on `(0, 1]`, never zero.
#[inline]
fn open_unit<R: Rng + ?Sized>(rng: &mut R) -> f64 {
    ((rng.next_u64() >> 11) + 1) as f64 * (1.0 / (1u64 << 53) as f64)
}

/// Box-Muller: one complex number whose real and imaginary parts are
/// independent standard normals.
#[inline]
pub fn complex_normal<R: Rng + ?Sized>(rng: &mut R) -> Complex64 {
    let r = (-2.0 * open_unit(rng).ln()).sqrt();
    let theta = TAU * open_unit(rng);
    Complex64::new(r * theta.cos(), r * theta.sin())
}
