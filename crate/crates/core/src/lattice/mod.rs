//! Modular linear algebra, discrete Gaussians and the two key-sampling
//! backends (trapdoor basis + nearest-plane sampling, and key-first
//! sampling).

mod gaussian;
mod gram_schmidt;
mod keyfirst;
mod matrix;
mod params;
mod stats;
mod trapdoor;

use alloc::string::String;

pub use gaussian::{
    sample_dgauss_centered, sample_dgauss_int, sample_dgauss_vec, TAIL_CUT,
};
pub use gram_schmidt::{gram_schmidt, GramSchmidt};
pub use keyfirst::keyfirst_pair;
pub use matrix::{IntMatrix, IntVector, ZqMatrix, ZqVector};
pub use params::{is_prime, SchemeParams};
pub use stats::statistical_distance;
pub use trapdoor::{
    min_sampling_sigma, sample_d, solve_mod_q, trapgen, PreimageSampler, GS_NORM_CONSTANT, NORM_SLACK,
    SAMPLE_D_ATTEMPTS,
};

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum LatticeError {
    #[error("invalid parameter: {0}")]
    InvalidParams(String),
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("m = {m} is too small for trapgen (need m >= {required})")]
    LatticeTooSmall { m: usize, required: usize },
    #[error("basis is rank deficient (column {0})")]
    RankDeficient(usize),
    #[error("distribution is not normalized (total mass {0})")]
    NotNormalized(f64),
    #[error("negative probability mass")]
    NegativeMass,
    #[error("matrix is not full rank modulo q")]
    SingularModQ,
    #[error("sample exceeded the norm bound {attempts} times in a row")]
    NormBoundExceeded { attempts: usize },
}
