use alloc::vec::Vec;

use rand_core::RngCore;

use super::{sample_dgauss_vec, IntMatrix, LatticeError, ZqMatrix};

/// Key-first sampling: draw the short matrix `R` (columns from
/// `D_{Z^m,sigma}`) and set `U = A R mod q`.
pub fn keyfirst_pair<R: RngCore + ?Sized>(
    a: &ZqMatrix,
    sigma: f64,
    n: usize,
    rng: &mut R,
) -> Result<(ZqMatrix, IntMatrix), LatticeError> {
    let m = a.cols();
    let columns = (0..n)
        .map(|_| sample_dgauss_vec(m, sigma, rng))
        .collect::<Result<Vec<_>, _>>()?;
    let r = IntMatrix::from_columns(m, &columns)?;
    let u = a.mul_int(&r)?;
    Ok((u, r))
}
