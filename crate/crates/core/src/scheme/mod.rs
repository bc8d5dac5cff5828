//! The four-algorithm scheme, its classical reference and the noise-margin
//! estimator used to accept parameter presets.

mod classical;
mod keys;
mod noise;
mod quantum;

use alloc::string::String;
use alloc::vec::Vec;

use sha2::{Digest, Sha256};

use crate::lattice::{LatticeError, SchemeParams};
use crate::revcirc::CircuitError;
use crate::sim::StateError;

pub use classical::{classical_decrypt, classical_encrypt, ClassicalCiphertext, EncryptionRandomness};
pub use keys::{
    hash_id, qextract, qkeygen, verify_key, IdentityKey, KeyBackend, MasterPublicKey,
    MasterSecretKey,
};
pub use noise::{noise_margin_estimate, NoiseMargin, MIN_MARGIN_TRIALS};
pub use quantum::{basis_plaintext, qdecrypt, qencrypt, qencrypt_with, Ciphertext};

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum SchemeError {
    #[error(transparent)]
    Lattice(#[from] LatticeError),
    #[error(transparent)]
    Circuit(#[from] CircuitError),
    #[error(transparent)]
    State(#[from] StateError),
    #[error("identity has {got} bits, expected {expected}")]
    WrongIdLength { expected: usize, got: usize },
    #[error("key material does not match the {0} backend")]
    BackendMismatch(&'static str),
    #[error("the oracle_key hash is programmed by the key generation center and needs the master secret key")]
    HashRequiresMsk,
    #[error("key contract violated: A R != H(id) mod q")]
    KeyContract,
    #[error("malformed ciphertext: {0}")]
    MalformedCiphertext(String),
    #[error("encryption left work registers {0} entangled (circuit bug)")]
    EntangledAncilla(String),
    #[error("decryption failure: {0}")]
    DecryptionFailure(String),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

/// Named parameter sets.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Preset {
    /// `(n, m, q, sigma) = (4, 64, 12289, 4)` with the key-first backend.
    /// Accepted by [`noise_margin_estimate`] with a wide margin.
    Toy,
    /// `(2, 84, 101, 48)` with the trapdoor backend. Large enough for
    /// trapgen and nearest-plane sampling; far too noisy to decrypt, so it
    /// only exercises the key contracts.
    TinyBasis,
}

impl Preset {
    pub const ALL: [Preset; 2] = [Preset::Toy, Preset::TinyBasis];

    pub fn name(self) -> &'static str {
        match self {
            Preset::Toy => "toy",
            Preset::TinyBasis => "tiny-basis",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        Self::ALL.into_iter().find(|p| p.name() == s)
    }

    pub fn params(self) -> SchemeParams {
        let (n, m, q, sigma) = match self {
            Preset::Toy => (4, 64, 12289, 4.0),
            Preset::TinyBasis => (2, 84, 101, 48.0),
        };
        SchemeParams::new(n, m, q, sigma).expect("preset parameters are valid")
    }

    pub fn backend(self) -> KeyBackend {
        match self {
            Preset::Toy => KeyBackend::OracleKey,
            Preset::TinyBasis => KeyBackend::Basis,
        }
    }
}

/// An `n`-bit identity. Bit `i` is the `i`-th character of the text form.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Identity(Vec<bool>);

impl Identity {
    pub fn from_bits(bits: Vec<bool>) -> Self {
        Identity(bits)
    }

    /// Parses a string of `0`/`1` characters.
    pub fn parse_bits(s: &str) -> Option<Self> {
        s.chars()
            .map(|c| match c {
                '0' => Some(false),
                '1' => Some(true),
                _ => None,
            })
            .collect::<Option<Vec<_>>>()
            .map(Identity)
    }

    /// Hashes an arbitrary label (e-mail address, host name...) to `n` bits.
    pub fn from_label(label: &[u8], n: usize) -> Self {
        let mut bits = Vec::with_capacity(n);
        let mut block = 0u32;
        while bits.len() < n {
            let digest = Sha256::new()
                .chain_update(b"qibe/identity/v1")
                .chain_update(block.to_be_bytes())
                .chain_update(label)
                .finalize();
            bits.extend(digest.iter().flat_map(|byte| (0..8).rev().map(move |i| byte >> i & 1 == 1)));
            block += 1;
        }
        bits.truncate(n);
        Identity(bits)
    }

    pub fn bits(&self) -> &[bool] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn to_bit_string(&self) -> String {
        self.0.iter().map(|&b| if b { '1' } else { '0' }).collect()
    }

    /// Packed bytes used as hash input (length-prefixed so trailing zero
    /// bits are not ambiguous).
    pub(crate) fn encode(&self) -> Vec<u8> {
        let mut out = Vec::with_capacity(8 + self.0.len().div_ceil(8));
        out.extend_from_slice(&(self.0.len() as u64).to_be_bytes());
        for chunk in self.0.chunks(8) {
            out.push(chunk.iter().enumerate().fold(0u8, |acc, (i, &b)| acc | u8::from(b) << (7 - i)));
        }
        out
    }
}

/// `(v mod q)` as a signed representative in `(-q/2, q/2]`.
pub(crate) fn centered(v: u64, q: u64) -> i64 {
    let v = (v % q) as i64;
    if v > (q / 2) as i64 {
        v - q as i64
    } else {
        v
    }
}

/// SHA-256 of a domain tag and a list of fields, used to key ChaCha20 streams.
pub(crate) fn derive_seed(domain: &[u8], parts: &[&[u8]]) -> [u8; 32] {
    let mut h = Sha256::new();
    h.update(domain);
    for p in parts {
        h.update((p.len() as u64).to_be_bytes());
        h.update(p);
    }
    h.finalize().into()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn presets() {
        let toy = Preset::Toy.params();
        assert_eq!((toy.n(), toy.m(), toy.q(), toy.bit_len()), (4, 64, 12289, 14));
        let tiny = Preset::TinyBasis.params();
        assert!(tiny.check_basis_backend().is_ok());
        assert_eq!(Preset::parse("tiny-basis"), Some(Preset::TinyBasis));
        assert_eq!(Preset::parse("huge"), None);
    }

    #[test]
    fn identity_forms() {
        let id = Identity::parse_bits("1010").unwrap();
        assert_eq!(id.bits(), &[true, false, true, false]);
        assert_eq!(id.to_bit_string(), "1010");
        assert!(Identity::parse_bits("10a").is_none());
        let a = Identity::from_label(b"alice@example.org", 300);
        assert_eq!(a.len(), 300);
        assert_eq!(a, Identity::from_label(b"alice@example.org", 300));
        assert_ne!(a, Identity::from_label(b"bob@example.org", 300));
        // prefix property: shorter hashes are prefixes of longer ones
        assert_eq!(&a.bits()[..4], Identity::from_label(b"alice@example.org", 4).bits());
        assert_ne!(
            Identity::parse_bits("10").unwrap().encode(),
            Identity::parse_bits("100").unwrap().encode()
        );
    }

    #[test]
    fn centering() {
        assert_eq!(centered(254, 101), -49);
        assert_eq!(centered(99, 101), -2);
        assert_eq!(centered(50, 101), 50);
        assert_eq!(centered(51, 101), -50);
    }
}
