use rand_core::RngCore;

use super::{derive_seed, Identity, SchemeError};
use crate::lattice::{
    keyfirst_pair, trapgen, IntMatrix, IntVector, PreimageSampler, SchemeParams, ZqMatrix,
};
use crate::rng::{from_seed_bytes, split};

const PRF_DOMAIN: &[u8] = b"qibe/prf/v1";
const HASH_DOMAIN: &[u8] = b"qibe/hash/v1";
const EXTRACT_DOMAIN: &[u8] = b"qibe/extract/v1";

/// How `H(id)` and the identity keys are produced.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum KeyBackend {
    /// Key-first sampling: `R_id` is a Gaussian matrix drawn from a PRF of
    /// the master seed and `H(id) = A R_id`. Exact contracts at any size,
    /// but `H` needs the master secret.
    OracleKey,
    /// Trapdoor basis: `H(id)` is a public XOF output and keys are
    /// nearest-plane preimages. Needs `m >= 6 n ceil(log2 q)`.
    Basis,
}

impl KeyBackend {
    pub fn name(self) -> &'static str {
        match self {
            KeyBackend::OracleKey => "oracle_key",
            KeyBackend::Basis => "basis",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        match s {
            "oracle_key" => Some(KeyBackend::OracleKey),
            "basis" => Some(KeyBackend::Basis),
            _ => None,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct MasterPublicKey {
    pub params: SchemeParams,
    pub backend: KeyBackend,
    /// `n x m` over `Z_q`.
    pub a: ZqMatrix,
    /// Public seed of the identity hash (used by the basis backend).
    pub hash_config: [u8; 32],
}

#[derive(Debug, Clone, PartialEq)]
pub enum MasterSecretKey {
    OracleKey { seed: [u8; 32] },
    /// `seed` keys the (deterministic) preimage sampling per identity.
    Basis { basis: IntMatrix, seed: [u8; 32] },
}

impl MasterSecretKey {
    pub fn backend(&self) -> KeyBackend {
        match self {
            MasterSecretKey::OracleKey { .. } => KeyBackend::OracleKey,
            MasterSecretKey::Basis { .. } => KeyBackend::Basis,
        }
    }
}

/// `sk_id = R`, an `m x n` short integer matrix with `A R = H(id) (mod q)`.
#[derive(Debug, Clone, PartialEq)]
pub struct IdentityKey {
    pub id: Identity,
    pub r: IntMatrix,
}

pub fn qkeygen<R: RngCore + ?Sized>(
    params: &SchemeParams,
    backend: KeyBackend,
    rng: &mut R,
) -> Result<(MasterPublicKey, MasterSecretKey), SchemeError> {
    let mut hash_config = [0u8; 32];
    rng.fill_bytes(&mut hash_config);
    let mut seed = [0u8; 32];
    rng.fill_bytes(&mut seed);
    let (a, msk) = match backend {
        KeyBackend::OracleKey => {
            let a = ZqMatrix::uniform(params.n(), params.m(), params.q(), rng);
            (a, MasterSecretKey::OracleKey { seed })
        }
        KeyBackend::Basis => {
            let (a, basis) = trapgen(params, &mut split(rng))?;
            (a, MasterSecretKey::Basis { basis, seed })
        }
    };
    Ok((MasterPublicKey { params: *params, backend, a, hash_config }, msk))
}

fn check_id(params: &SchemeParams, id: &Identity) -> Result<(), SchemeError> {
    if id.len() != params.n() {
        return Err(SchemeError::WrongIdLength { expected: params.n(), got: id.len() });
    }
    Ok(())
}

fn check_backend(mpk: &MasterPublicKey, msk: &MasterSecretKey) -> Result<(), SchemeError> {
    if mpk.backend != msk.backend() {
        return Err(SchemeError::BackendMismatch(mpk.backend.name()));
    }
    Ok(())
}

fn prf_key(mpk: &MasterPublicKey, seed: &[u8; 32], id: &Identity) -> Result<IntMatrix, SchemeError> {
    let mut rng = from_seed_bytes(derive_seed(PRF_DOMAIN, &[seed, &id.encode()]));
    let (_, r) = keyfirst_pair(&mpk.a, mpk.params.sigma(), mpk.params.n(), &mut rng)?;
    Ok(r)
}

/// `H(id)`, an `n x n` matrix over `Z_q`.
///
/// The basis backend hashes publicly and ignores `msk`. The oracle_key
/// backend programs `H(id) = A R_id` and therefore needs `msk`.
pub fn hash_id(
    mpk: &MasterPublicKey,
    msk: Option<&MasterSecretKey>,
    id: &Identity,
) -> Result<ZqMatrix, SchemeError> {
    check_id(&mpk.params, id)?;
    let p = &mpk.params;
    match mpk.backend {
        KeyBackend::Basis => {
            let mut xof = from_seed_bytes(derive_seed(HASH_DOMAIN, &[&mpk.hash_config, &id.encode()]));
            Ok(ZqMatrix::uniform(p.n(), p.n(), p.q(), &mut xof))
        }
        KeyBackend::OracleKey => {
            let msk = msk.ok_or(SchemeError::HashRequiresMsk)?;
            check_backend(mpk, msk)?;
            let MasterSecretKey::OracleKey { seed } = msk else { unreachable!() };
            Ok(mpk.a.mul_int(&prf_key(mpk, seed, id)?)?)
        }
    }
}

/// Extracts `sk_id`, checking `A R = H(id) (mod q)` before returning.
/// Deterministic per identity under both backends.
pub fn qextract(
    mpk: &MasterPublicKey,
    msk: &MasterSecretKey,
    id: &Identity,
) -> Result<IdentityKey, SchemeError> {
    check_id(&mpk.params, id)?;
    check_backend(mpk, msk)?;
    let u = hash_id(mpk, Some(msk), id)?;
    let r = match msk {
        MasterSecretKey::OracleKey { seed } => prf_key(mpk, seed, id)?,
        MasterSecretKey::Basis { basis, seed } => {
            let sampler = PreimageSampler::new(&mpk.a, basis, mpk.params.sigma())?;
            let mut rng = from_seed_bytes(derive_seed(EXTRACT_DOMAIN, &[seed, &id.encode()]));
            let columns = (0..u.cols())
                .map(|i| sampler.sample(&u.column(i), &mut rng))
                .collect::<Result<alloc::vec::Vec<IntVector>, _>>()?;
            IntMatrix::from_columns(mpk.params.m(), &columns)?
        }
    };
    let key = IdentityKey { id: id.clone(), r };
    if !verify_key(mpk, &u, &key)? {
        return Err(SchemeError::KeyContract);
    }
    Ok(key)
}

/// `A R == u (mod q)`.
pub fn verify_key(mpk: &MasterPublicKey, u: &ZqMatrix, key: &IdentityKey) -> Result<bool, SchemeError> {
    let p = &mpk.params;
    if (key.r.rows(), key.r.cols()) != (p.m(), p.n()) {
        return Ok(false);
    }
    Ok(mpk.a.mul_int(&key.r)? == *u)
}
