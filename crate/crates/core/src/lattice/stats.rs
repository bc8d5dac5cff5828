use alloc::collections::BTreeSet;
use alloc::collections::BTreeMap;

use super::LatticeError;

const MASS_TOLERANCE: f64 = 1e-9;

/// `1/2 * sum |p(s) - r(s)|` over the union of supports.
pub fn statistical_distance<K: Ord>(
    p: &BTreeMap<K, f64>,
    r: &BTreeMap<K, f64>,
) -> Result<f64, LatticeError> {
    check_distribution(p)?;
    check_distribution(r)?;
    let support: BTreeSet<&K> = p.keys().chain(r.keys()).collect();
    let total: f64 = support
        .into_iter()
        .map(|k| (p.get(k).copied().unwrap_or(0.0) - r.get(k).copied().unwrap_or(0.0)).abs())
        .sum();
    Ok((0.5 * total).clamp(0.0, 1.0))
}

fn check_distribution<K>(p: &BTreeMap<K, f64>) -> Result<(), LatticeError> {
    if p.values().any(|&v| v < 0.0 || v.is_nan()) {
        return Err(LatticeError::NegativeMass);
    }
    let mass: f64 = p.values().sum();
    if (mass - 1.0).abs() > MASS_TOLERANCE {
        return Err(LatticeError::NotNormalized(mass));
    }
    Ok(())
}
