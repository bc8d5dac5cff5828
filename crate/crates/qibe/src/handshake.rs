//! Session-key transport between a receiver holding an identity key and a
//! sender holding only public material.
//!
//! ```text
//! sender                         receiver
//!   | -- hello ------------------> |
//!   | <-------------- id + mpk --- |
//!   | -- ciphertext -------------> |   sessionKey = Decrypt(sk, c)
//!   | <------------ ack(hash) ---- |
//! ```
//!
//! Session keys are `n`-bit basis states. The quantum ciphertext travels as
//! its classical description, so nothing here can show that it was not
//! copied on the way.

use std::io::{Read, Write};

use rand_core::RngCore;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use qibe_core::lattice::ZqMatrix;
use qibe_core::scheme::{
    basis_plaintext, hash_id, qdecrypt, qencrypt, Identity, IdentityKey, KeyBackend, MasterPublicKey,
};

use crate::error::{CliError, Exit};
use crate::formats::{mpk_fingerprint, CiphertextJson, MpkJson};
use crate::frame::{read_frame, write_frame, Frame, FrameError, FrameKind};

pub const PROTOCOL_VERSION: u32 = 1;

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Hello {
    pub version: u32,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct IdMpk {
    pub id: String,
    pub mpk: MpkJson,
    pub mpk_fingerprint: String,
    /// `H(id)` row-major, only for the oracle_key backend whose hash needs
    /// the master secret; the receiver recomputes it as `A R`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub h_id: Option<Vec<u64>>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Ack {
    pub key_hash: String,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub session_key: String,
    /// Short printable digest of the session key.
    pub fingerprint: String,
}

impl Outcome {
    fn new(bits: &[bool]) -> Self {
        let session_key: String = bits.iter().map(|&b| if b { '1' } else { '0' }).collect();
        let digest = Sha256::new()
            .chain_update(b"qibe/fingerprint/v1")
            .chain_update(session_key.as_bytes())
            .finalize();
        Outcome { fingerprint: hex::encode(&digest[..8]), session_key }
    }
}

fn key_hash(bits: &str) -> String {
    hex::encode(Sha256::new().chain_update(b"qibe/session/v1").chain_update(bits.as_bytes()).finalize())
}

fn failed(msg: impl std::fmt::Display) -> CliError {
    CliError::new(Exit::Handshake, format!("handshake failed: {msg}"))
}

fn bad_payload(msg: impl std::fmt::Display) -> CliError {
    CliError::from(FrameError::BadPayload(msg.to_string()))
}

/// Receiver side: answers the hello, decrypts the session key, acks its hash.
pub fn run_receiver<S: Read + Write>(
    stream: &mut S,
    mpk: &MasterPublicKey,
    sk: &IdentityKey,
) -> Result<Outcome, CliError> {
    let hello: Hello = read_frame(stream)?.expect(FrameKind::Hello)?;
    if hello.version != PROTOCOL_VERSION {
        return Err(failed(format!("peer speaks protocol version {}", hello.version)));
    }
    let h_id = match mpk.backend {
        KeyBackend::OracleKey => Some(mpk.a.mul_int(&sk.r).map_err(failed)?.as_row_major().to_vec()),
        KeyBackend::Basis => None,
    };
    let offer = IdMpk {
        id: sk.id.to_bit_string(),
        mpk: MpkJson::from(mpk),
        mpk_fingerprint: mpk_fingerprint(mpk),
        h_id,
    };
    write_frame(stream, &Frame::new(FrameKind::IdMpk, &offer))?;

    let ct: CiphertextJson = read_frame(stream)?.expect(FrameKind::Ciphertext)?;
    let ct = ct.into_ciphertext(mpk).map_err(bad_payload)?;
    let state = qdecrypt(mpk, sk, &ct)?;
    if state.len() != 1 {
        return Err(failed("session key is not a basis state"));
    }
    let bits = state.branches().keys().next().expect("one branch");
    let key: Vec<bool> = (0..state.width()).map(|q| bits.get(q)).collect();
    let outcome = Outcome::new(&key);
    write_frame(stream, &Frame::new(FrameKind::Ack, &Ack { key_hash: key_hash(&outcome.session_key) }))?;
    Ok(outcome)
}

/// Sender side. `expected` is the sender's own copy of the master public
/// key; a peer presenting a different one is refused.
pub fn run_sender<S: Read + Write, R: RngCore + ?Sized>(
    stream: &mut S,
    expected: &MasterPublicKey,
    rng: &mut R,
) -> Result<Outcome, CliError> {
    write_frame(stream, &Frame::new(FrameKind::Hello, &Hello { version: PROTOCOL_VERSION }))?;
    let offer: IdMpk = read_frame(stream)?.expect(FrameKind::IdMpk)?;
    let mine = mpk_fingerprint(expected);
    if offer.mpk_fingerprint != mine {
        return Err(failed(format!("mpk fingerprint {} does not match ours ({mine})", offer.mpk_fingerprint)));
    }
    let theirs = MasterPublicKey::try_from(offer.mpk).map_err(bad_payload)?;
    if mpk_fingerprint(&theirs) != mine {
        return Err(failed("mpk does not match its advertised fingerprint"));
    }
    let p = &expected.params;
    let id = Identity::parse_bits(&offer.id)
        .filter(|id| id.len() == p.n())
        .ok_or_else(|| bad_payload("identity is not an n-bit string"))?;
    let u = match (expected.backend, offer.h_id) {
        (KeyBackend::Basis, _) => hash_id(expected, None, &id)?,
        (KeyBackend::OracleKey, Some(h)) => {
            if h.len() != p.n() * p.n() || h.iter().any(|&v| v >= p.q()) {
                return Err(bad_payload("H(id) has the wrong shape"));
            }
            ZqMatrix::from_row_major(p.n(), p.n(), p.q(), h).map_err(bad_payload)?
        }
        (KeyBackend::OracleKey, None) => return Err(bad_payload("H(id) missing for the oracle_key backend")),
    };

    let key: Vec<bool> = (0..p.n()).map(|_| rng.next_u32() & 1 == 1).collect();
    let ct = qencrypt(expected, &u, &basis_plaintext(&key), rng)?;
    write_frame(stream, &Frame::new(FrameKind::Ciphertext, &CiphertextJson::new(&ct, expected)))?;

    let ack: Ack = read_frame(stream)?.expect(FrameKind::Ack)?;
    let outcome = Outcome::new(&key);
    if ack.key_hash != key_hash(&outcome.session_key) {
        return Err(failed("peer derived a different session key"));
    }
    Ok(outcome)
}
