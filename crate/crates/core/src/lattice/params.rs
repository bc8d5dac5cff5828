use alloc::format;

use super::LatticeError;

/// Scheme parameters `(n, m, q, sigma)` and the derived bit-length of `q`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SchemeParams {
    n: usize,
    m: usize,
    q: u64,
    sigma: f64,
    bit_len: usize,
}

impl SchemeParams {
    pub fn new(n: usize, m: usize, q: u64, sigma: f64) -> Result<Self, LatticeError> {
        if n == 0 {
            return Err(LatticeError::InvalidParams(format!("n must be at least 1 (got {n})")));
        }
        if m == 0 {
            return Err(LatticeError::InvalidParams(format!("m must be at least 1 (got {m})")));
        }
        if q < 3 || !is_prime(q) {
            return Err(LatticeError::InvalidParams(format!("q must be a prime >= 3 (got {q})")));
        }
        // registers and products are carried in u64/i64; keep q well inside
        if q >= 1 << 31 {
            return Err(LatticeError::InvalidParams(format!("q must be below 2^31 (got {q})")));
        }
        if !(sigma.is_finite() && sigma > 0.0) {
            return Err(LatticeError::InvalidParams(format!("sigma must be positive (got {sigma})")));
        }
        let bit_len = (u64::BITS - q.leading_zeros()) as usize;
        Ok(Self { n, m, q, sigma, bit_len })
    }

    /// Message / identity dimension.
    pub fn n(&self) -> usize {
        self.n
    }

    /// Lattice dimension.
    pub fn m(&self) -> usize {
        self.m
    }

    pub fn q(&self) -> u64 {
        self.q
    }

    pub fn sigma(&self) -> f64 {
        self.sigma
    }

    /// `L`: the number of bits in the binary representation of `q`,
    /// so `2^(L-1) <= q < 2^L`.
    pub fn bit_len(&self) -> usize {
        self.bit_len
    }

    /// `ceil(log2 q)`; equals `L` unless `q` is a power of two (never, q prime > 2).
    pub fn ceil_log2_q(&self) -> usize {
        ceil_log2(self.q)
    }

    /// Smallest `m` accepted by [`super::trapgen`]: `6 n ceil(log2 q)`.
    pub fn trapgen_min_m(&self) -> usize {
        6 * self.n * self.ceil_log2_q()
    }

    pub fn check_basis_backend(&self) -> Result<(), LatticeError> {
        let required = self.trapgen_min_m();
        if self.m < required {
            return Err(LatticeError::LatticeTooSmall { m: self.m, required });
        }
        Ok(())
    }

    pub fn half_q(&self) -> u64 {
        self.q / 2
    }

    pub fn quarter_q(&self) -> u64 {
        self.q / 4
    }
}

pub(crate) fn ceil_log2(x: u64) -> usize {
    if x <= 1 {
        0
    } else {
        (u64::BITS - (x - 1).leading_zeros()) as usize
    }
}

/// Deterministic trial division; `q` is at most 31 bits here.
pub fn is_prime(x: u64) -> bool {
    if x < 2 {
        return false;
    }
    if x.is_multiple_of(2) {
        return x == 2;
    }
    let mut d = 3u64;
    while d * d <= x {
        if x.is_multiple_of(d) {
            return false;
        }
        d += 2;
    }
    true
}
