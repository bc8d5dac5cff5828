use alloc::vec;
use alloc::vec::Vec;

use super::{IntMatrix, LatticeError};

// relative threshold below which an orthogonalized column counts as zero
const RANK_EPS: f64 = 1e-9;

/// Gram-Schmidt orthogonalization of a basis, taken column by column.
#[derive(Debug, Clone)]
pub struct GramSchmidt {
    /// Orthogonalized columns `b~_i`.
    pub vectors: Vec<Vec<f64>>,
    /// `||b~_i||`.
    pub norms: Vec<f64>,
    /// `coefficients[j][i] = <b_i, b~_j> / ||b~_j||^2` for `j < i`, 1 on the diagonal.
    pub coefficients: Vec<Vec<f64>>,
}

impl GramSchmidt {
    /// `||B~||`: the longest orthogonalized vector.
    pub fn max_norm(&self) -> f64 {
        self.norms.iter().copied().fold(0.0, f64::max)
    }
}

pub fn gram_schmidt(basis: &IntMatrix) -> Result<GramSchmidt, LatticeError> {
    let dim = basis.rows();
    let count = basis.cols();
    let mut vectors: Vec<Vec<f64>> = Vec::with_capacity(count);
    let mut norms_sq: Vec<f64> = Vec::with_capacity(count);
    let mut coefficients = vec![vec![0.0; count]; count];

    for i in 0..count {
        let b: Vec<f64> = (0..dim).map(|r| basis.get(r, i) as f64).collect();
        let b_norm_sq: f64 = b.iter().map(|x| x * x).sum();
        let mut v = b.clone();
        for j in 0..i {
            let mu = dot(&b, &vectors[j]) / norms_sq[j];
            coefficients[j][i] = mu;
            for (vk, &wk) in v.iter_mut().zip(&vectors[j]) {
                *vk -= mu * wk;
            }
        }
        let n2 = dot(&v, &v);
        if b_norm_sq == 0.0 || n2 <= RANK_EPS * b_norm_sq {
            return Err(LatticeError::RankDeficient(i));
        }
        coefficients[i][i] = 1.0;
        vectors.push(v);
        norms_sq.push(n2);
    }

    let norms = norms_sq.into_iter().map(libm::sqrt).collect();
    Ok(GramSchmidt { vectors, norms, coefficients })
}

pub(crate) fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}
