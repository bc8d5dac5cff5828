//! Seedable, splittable randomness.
//!
//! Every sampling routine in the crate takes an explicit `&mut R` where
//! `R: RngCore`. [`SchemeRng`] is the concrete generator used by the
//! scheme and the CLI; [`split`] derives an independent child stream.

use rand_chacha::rand_core::{RngCore, SeedableRng};
use rand_chacha::ChaCha20Rng;

pub use rand_chacha::rand_core;

pub type SchemeRng = ChaCha20Rng;

/// Generator for a 64-bit user seed.
pub fn seeded(seed: u64) -> SchemeRng {
    ChaCha20Rng::seed_from_u64(seed)
}

/// Generator keyed by 32 bytes of seed material.
pub fn from_seed_bytes(seed: [u8; 32]) -> SchemeRng {
    ChaCha20Rng::from_seed(seed)
}

/// Derives an independent child generator, advancing `parent`.
pub fn split<R: RngCore + ?Sized>(parent: &mut R) -> SchemeRng {
    let mut seed = [0u8; 32];
    parent.fill_bytes(&mut seed);
    ChaCha20Rng::from_seed(seed)
}

/// Uniform integer in `[0, bound)`, unbiased.
pub fn uniform_below<R: RngCore + ?Sized>(rng: &mut R, bound: u64) -> u64 {
    assert!(bound > 0, "empty range");
    let zone = u64::MAX - (u64::MAX % bound);
    loop {
        let v = rng.next_u64();
        if v < zone {
            return v % bound;
        }
    }
}

/// Uniform double in `[0, 1)` with 53 bits of precision.
pub fn uniform_unit<R: RngCore + ?Sized>(rng: &mut R) -> f64 {
    (rng.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
}
