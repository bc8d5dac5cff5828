use alloc::format;
use alloc::vec::Vec;

use rand_core::RngCore;

use super::SchemeError;
use crate::lattice::{sample_dgauss_int, sample_dgauss_vec, SchemeParams};

pub const MIN_MARGIN_TRIALS: usize = 1000;

/// Monte Carlo statistics of the decryption noise `|e0_i - <r^i, e>|`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NoiseMargin {
    pub trials: usize,
    pub max: u64,
    pub p999: u64,
    /// `floor(q/8)`, half the decision threshold.
    pub gate: u64,
}

impl NoiseMargin {
    /// Accepted iff the observed maximum stays below `floor(q/8)`.
    pub fn passes(&self) -> bool {
        self.max < self.gate
    }
}

/// Samples `trials` fresh key columns `r ~ D_{Z^m,sigma}` with noise
/// `e0 ~ D_{Z,sigma}`, `e ~ D_{Z^m,sigma}` and records `|e0 - <r, e>|`.
///
/// Key columns are drawn from the key-first distribution; the nearest-plane
/// sampler targets the same distribution.
pub fn noise_margin_estimate<R: RngCore + ?Sized>(
    params: &SchemeParams,
    trials: usize,
    rng: &mut R,
) -> Result<NoiseMargin, SchemeError> {
    if trials < MIN_MARGIN_TRIALS {
        return Err(SchemeError::InvalidArgument(format!(
            "noise margin needs at least {MIN_MARGIN_TRIALS} trials (got {trials})"
        )));
    }
    let (m, sigma) = (params.m(), params.sigma());
    let mut samples: Vec<u64> = Vec::with_capacity(trials);
    for _ in 0..trials {
        let r = sample_dgauss_vec(m, sigma, rng)?;
        let e = sample_dgauss_vec(m, sigma, rng)?;
        let e0 = sample_dgauss_int(sigma, rng) as i128;
        samples.push((e0 - r.dot(&e)).unsigned_abs() as u64);
    }
    samples.sort_unstable();
    let idx = ((trials as f64) * 0.999).ceil() as usize - 1;
    Ok(NoiseMargin {
        trials,
        max: *samples.last().expect("trials >= 1"),
        p999: samples[idx.min(trials - 1)],
        gate: params.q() / 8,
    })
}
