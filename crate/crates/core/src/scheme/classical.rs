use alloc::vec::Vec;

use rand_core::RngCore;

use super::{centered, MasterPublicKey, IdentityKey, SchemeError};
use crate::lattice::{sample_dgauss_vec, IntVector, SchemeParams, ZqMatrix, ZqVector};
use crate::rng::seeded;

/// The per-ciphertext randomness `(s, e0, e)`, shared by every branch and
/// every message bit of one encryption.
#[derive(Debug, Clone, PartialEq)]
pub struct EncryptionRandomness {
    pub s: ZqVector,
    pub e0: IntVector,
    pub e: IntVector,
    /// Seed the three values were expanded from.
    pub seed: u64,
}

impl EncryptionRandomness {
    pub fn sample<R: RngCore + ?Sized>(params: &SchemeParams, rng: &mut R) -> Self {
        Self::from_seed(params, rng.next_u64())
    }

    pub fn from_seed(params: &SchemeParams, seed: u64) -> Self {
        let mut rng = seeded(seed);
        let s = ZqVector::uniform(params.q(), params.n(), &mut rng);
        let e0 = sample_dgauss_vec(params.n(), params.sigma(), &mut rng).expect("n >= 1");
        let e = sample_dgauss_vec(params.m(), params.sigma(), &mut rng).expect("m >= 1");
        EncryptionRandomness { s, e0, e, seed }
    }

    /// `s = 0, e0 = 0, e = 0`.
    pub fn zero(params: &SchemeParams) -> Self {
        EncryptionRandomness {
            s: ZqVector::zero(params.q(), params.n()),
            e0: IntVector::zero(params.n()),
            e: IntVector::zero(params.m()),
            seed: 0,
        }
    }

    fn check(&self, params: &SchemeParams) -> Result<(), SchemeError> {
        if self.s.len() != params.n() || self.e0.len() != params.n() || self.e.len() != params.m() {
            return Err(SchemeError::InvalidArgument("randomness has the wrong dimensions".into()));
        }
        Ok(())
    }

    /// The masks `x = U^T s + e0 (mod q)`.
    pub(crate) fn mask(&self, params: &SchemeParams, u: &ZqMatrix) -> Result<ZqVector, SchemeError> {
        self.check(params)?;
        Ok(u.transpose_mul(&self.s)?.add_signed(self.e0.as_slice())?)
    }

    /// `c1 = A^T s + e (mod q)`.
    pub(crate) fn c1(&self, mpk: &MasterPublicKey) -> Result<ZqVector, SchemeError> {
        self.check(&mpk.params)?;
        Ok(mpk.a.transpose_mul(&self.s)?.add_signed(self.e.as_slice())?)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ClassicalCiphertext {
    pub c0: ZqVector,
    pub c1: ZqVector,
}

/// `c0 = U^T s + e0 + floor(q/2) m`, `c1 = A^T s + e`, all mod `q`, where
/// `u = H(id)`.
pub fn classical_encrypt(
    mpk: &MasterPublicKey,
    u: &ZqMatrix,
    m: &[bool],
    randomness: &EncryptionRandomness,
) -> Result<ClassicalCiphertext, SchemeError> {
    let p = &mpk.params;
    if m.len() != p.n() {
        return Err(SchemeError::InvalidArgument("message length differs from n".into()));
    }
    let x = randomness.mask(p, u)?;
    let shift: Vec<i64> = m.iter().map(|&b| if b { p.half_q() as i64 } else { 0 }).collect();
    Ok(ClassicalCiphertext { c0: x.add_signed(&shift)?, c1: randomness.c1(mpk)? })
}

/// `y = R^T c1`, `b_i = ((c0_i - y_i) mod q) - floor(q/2)`, and
/// `m_i = 1` iff `|b_i| < floor(q/4)`.
pub fn classical_decrypt(
    mpk: &MasterPublicKey,
    sk: &IdentityKey,
    ct: &ClassicalCiphertext,
) -> Result<Vec<bool>, SchemeError> {
    let p = &mpk.params;
    if ct.c0.len() != p.n() || ct.c1.len() != p.m() {
        return Err(SchemeError::MalformedCiphertext("wrong vector lengths".into()));
    }
    let y = sk.r.transpose_mul_mod(&ct.c1)?;
    Ok((0..p.n()).map(|i| decide(ct.c0.get(i), y.get(i), p.q())).collect())
}

/// The per-bit decision rule.
pub(crate) fn decide(c0: u64, y: u64, q: u64) -> bool {
    let diff = (c0 + q - y % q) % q;
    let b = diff as i64 - (q / 2) as i64;
    b.unsigned_abs() < q / 4
}

/// Residual noise `centered(c0 - floor(q/2) m - y)` of a decrypted bit.
pub(crate) fn residual(c0: u64, y: u64, m: bool, q: u64) -> i64 {
    let shift = if m { q / 2 } else { 0 };
    centered((c0 + 2 * q - shift - y % q) % q, q)
}
