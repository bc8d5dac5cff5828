use alloc::vec::Vec;

use rand_core::RngCore;

use super::{IntVector, LatticeError};
use crate::rng::{uniform_below, uniform_unit};

/// Tail cut: samples are confined to `|x - c| <= TAIL_CUT * sigma`.
/// The discarded mass is below `2^-100`.
pub const TAIL_CUT: f64 = 12.0;

/// One draw from `D_{Z,sigma}`: mass proportional to `exp(-pi x^2 / sigma^2)`.
pub fn sample_dgauss_int<R: RngCore + ?Sized>(sigma: f64, rng: &mut R) -> i64 {
    sample_dgauss_centered(sigma, 0.0, rng)
}

/// One draw from `D_{Z,sigma,center}` by rejection from the uniform
/// distribution on the truncated support.
pub fn sample_dgauss_centered<R: RngCore + ?Sized>(sigma: f64, center: f64, rng: &mut R) -> i64 {
    debug_assert!(sigma > 0.0);
    let reach = TAIL_CUT * sigma;
    // the nearest integers around the center always stay in the support
    let lo = libm::fmin(libm::ceil(center - reach), libm::floor(center)) as i64;
    let hi = libm::fmax(libm::floor(center + reach), libm::ceil(center)) as i64;
    let span = (hi - lo + 1) as u64;
    let scale = -core::f64::consts::PI / (sigma * sigma);
    loop {
        let x = lo + uniform_below(rng, span) as i64;
        let d = x as f64 - center;
        if uniform_unit(rng) < libm::exp(scale * d * d) {
            return x;
        }
    }
}

/// `dim` independent draws from [`sample_dgauss_int`].
pub fn sample_dgauss_vec<R: RngCore + ?Sized>(
    dim: usize,
    sigma: f64,
    rng: &mut R,
) -> Result<IntVector, LatticeError> {
    if dim == 0 {
        return Err(LatticeError::DimensionMismatch { expected: 1, got: 0 });
    }
    Ok(IntVector((0..dim).map(|_| sample_dgauss_int(sigma, rng)).collect::<Vec<_>>()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::statistical_distance;
    use crate::rng::seeded;
    use alloc::collections::BTreeMap;

    /// Exact normalized pmf on `[-bound, bound]` by direct summation.
    fn exact_pmf(sigma: f64, bound: i64) -> BTreeMap<i64, f64> {
        let weights: Vec<(i64, f64)> = (-bound..=bound)
            .map(|x| (x, libm::exp(-core::f64::consts::PI * (x * x) as f64 / (sigma * sigma))))
            .collect();
        let total: f64 = weights.iter().map(|(_, w)| w).sum();
        weights.into_iter().map(|(x, w)| (x, w / total)).collect()
    }

    fn histogram(samples: &[i64]) -> BTreeMap<i64, f64> {
        let mut h = BTreeMap::new();
        for &s in samples {
            *h.entry(s).or_insert(0.0) += 1.0;
        }
        let n = samples.len() as f64;
        h.values_mut().for_each(|v| *v /= n);
        h
    }

    #[test]
    fn empirical_distance_to_exact_pmf_sigma_4() {
        let mut rng = seeded(0x5eed);
        let samples: Vec<i64> = (0..100_000).map(|_| sample_dgauss_int(4.0, &mut rng)).collect();
        assert!(samples.iter().all(|x| x.abs() <= 48));
        let d = statistical_distance(&histogram(&samples), &exact_pmf(4.0, 48)).unwrap();
        assert!(d < 0.01, "distance {d}");
    }

    #[test]
    fn mean_is_centered() {
        let mut rng = seeded(11);
        let n = 100_000;
        let samples: Vec<f64> = (0..n).map(|_| sample_dgauss_int(4.0, &mut rng) as f64).collect();
        let mean = samples.iter().sum::<f64>() / n as f64;
        let var = samples.iter().map(|x| (x - mean) * (x - mean)).sum::<f64>() / (n - 1) as f64;
        let stderr = libm::sqrt(var / n as f64);
        assert!(mean.abs() < 3.0 * stderr, "mean {mean} stderr {stderr}");
    }

    #[test]
    fn pmf_mode_at_zero() {
        let pmf = exact_pmf(4.0, 48);
        let p0 = pmf[&0];
        assert!(pmf.values().all(|&p| p <= p0));
        assert!(pmf.iter().all(|(x, p)| (p - pmf[&-x]).abs() < 1e-15));
    }

    #[test]
    fn centered_sampler_respects_center() {
        let mut rng = seeded(5);
        let n = 20_000;
        let mean = (0..n).map(|_| sample_dgauss_centered(3.0, 10.25, &mut rng) as f64).sum::<f64>()
            / n as f64;
        assert!((mean - 10.25).abs() < 0.05, "{mean}");
        // tiny sigma collapses onto the nearest integer
        for _ in 0..100 {
            assert_eq!(sample_dgauss_centered(1e-3, 7.0, &mut rng), 7);
        }
    }

    #[test]
    fn vector_sampling_contract() {
        assert!(sample_dgauss_vec(0, 4.0, &mut seeded(1)).is_err());
        let v1 = sample_dgauss_vec(64, 4.0, &mut seeded(9)).unwrap();
        let v2 = sample_dgauss_vec(64, 4.0, &mut seeded(9)).unwrap();
        assert_eq!(v1, v2);
        let one = sample_dgauss_vec(1, 4.0, &mut seeded(9)).unwrap();
        assert_eq!(one.0[0], sample_dgauss_int(4.0, &mut seeded(9)));
    }

    #[test]
    fn vector_norm_tail() {
        let mut rng = seeded(21);
        let bound = 4.0 * libm::sqrt(64.0) * 1.5;
        let within = (0..1000)
            .filter(|_| sample_dgauss_vec(64, 4.0, &mut rng).unwrap().norm() <= bound)
            .count();
        assert!(within >= 999, "{within}");
    }
}
