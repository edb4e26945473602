//! Reproducible random streams.
//!
//! Every stream is a ChaCha8 generator keyed by the 64-bit seed, with the
//! worker (or sample) index selecting the ChaCha stream, so parallel workers
//! draw from independent sequences. Gaussian variates come from the ziggurat
//! sampler in `rand_distr::StandardNormal`.

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

pub type StreamRng = ChaCha8Rng;

pub fn stream(seed: u64, index: u64) -> StreamRng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index);
    rng
}

/// N(0, var).
pub fn normal<R: Rng + ?Sized>(rng: &mut R, var: f64) -> f64 {
    let g: f64 = rng.sample(StandardNormal);
    g * var.sqrt()
}

/// Complex Gaussian with independent real and imaginary parts of variance `part_var` each.
pub fn complex_normal<R: Rng + ?Sized>(rng: &mut R, part_var: f64) -> Complex64 {
    Complex64::new(normal(rng, part_var), normal(rng, part_var))
}
