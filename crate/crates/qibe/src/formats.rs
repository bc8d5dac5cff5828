//! JSON file formats. Integers are decimal, matrices row-major, byte
//! strings base64, bitstrings MSB-first (leftmost character = highest qubit).

use base64::engine::general_purpose::STANDARD as B64;
use base64::Engine;
use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use qibe_core::lattice::{IntMatrix, SchemeParams, ZqMatrix, ZqVector};
use qibe_core::revcirc::{Circuit, CircuitError, Gate, GateKind, Register, RegisterRole};
use qibe_core::scheme::{
    Ciphertext, Identity, IdentityKey, KeyBackend, MasterPublicKey, MasterSecretKey,
};
use qibe_core::sim::{Bits, SparseState};
use qibe_core::ResourceReport;

#[derive(Debug, thiserror::Error)]
#[error("{0}")]
pub struct FormatError(pub String);

fn err<T>(msg: impl Into<String>) -> Result<T, FormatError> {
    Err(FormatError(msg.into()))
}

fn seed_from_b64(s: &str, what: &str) -> Result<[u8; 32], FormatError> {
    let bytes = B64.decode(s).map_err(|e| FormatError(format!("{what}: {e}")))?;
    bytes.try_into().map_err(|_| FormatError(format!("{what} must be 32 bytes")))
}

fn params(n: usize, m: usize, q: u64, sigma: f64) -> Result<SchemeParams, FormatError> {
    SchemeParams::new(n, m, q, sigma).map_err(|e| FormatError(e.to_string()))
}

fn int_rows(m: &IntMatrix) -> Vec<Vec<i64>> {
    (0..m.rows()).map(|r| m.row(r).to_vec()).collect()
}

fn int_from_rows(rows: &[Vec<i64>], shape: (usize, usize), what: &str) -> Result<IntMatrix, FormatError> {
    if rows.len() != shape.0 || rows.iter().any(|r| r.len() != shape.1) {
        return err(format!("{what} must be {} x {}", shape.0, shape.1));
    }
    IntMatrix::from_row_major(shape.0, shape.1, rows.concat()).map_err(|e| FormatError(e.to_string()))
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MpkJson {
    pub n: usize,
    pub m: usize,
    pub q: u64,
    pub sigma: f64,
    pub backend: String,
    /// `n x m`, flattened row-major.
    #[serde(rename = "A")]
    pub a: Vec<u64>,
    pub hash_config: String,
}

impl From<&MasterPublicKey> for MpkJson {
    fn from(k: &MasterPublicKey) -> Self {
        let p = &k.params;
        MpkJson {
            n: p.n(),
            m: p.m(),
            q: p.q(),
            sigma: p.sigma(),
            backend: k.backend.name().into(),
            a: k.a.as_row_major().to_vec(),
            hash_config: B64.encode(k.hash_config),
        }
    }
}

impl TryFrom<MpkJson> for MasterPublicKey {
    type Error = FormatError;

    fn try_from(j: MpkJson) -> Result<Self, FormatError> {
        let params = params(j.n, j.m, j.q, j.sigma)?;
        let backend = KeyBackend::parse(&j.backend)
            .ok_or_else(|| FormatError(format!("unknown backend `{}`", j.backend)))?;
        if j.a.iter().any(|&v| v >= j.q) {
            return err("A has an entry that is not reduced mod q");
        }
        let a = ZqMatrix::from_row_major(j.n, j.m, j.q, j.a).map_err(|e| FormatError(e.to_string()))?;
        let hash_config = seed_from_b64(&j.hash_config, "hash_config")?;
        Ok(MasterPublicKey { params, backend, a, hash_config })
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MskJson {
    pub backend: String,
    pub seed: String,
    #[serde(rename = "T_A", default, skip_serializing_if = "Option::is_none")]
    pub basis: Option<Vec<Vec<i64>>>,
}

impl From<&MasterSecretKey> for MskJson {
    fn from(k: &MasterSecretKey) -> Self {
        match k {
            MasterSecretKey::OracleKey { seed } => {
                MskJson { backend: k.backend().name().into(), seed: B64.encode(seed), basis: None }
            }
            MasterSecretKey::Basis { basis, seed } => MskJson {
                backend: k.backend().name().into(),
                seed: B64.encode(seed),
                basis: Some(int_rows(basis)),
            },
        }
    }
}

impl MskJson {
    /// Needs `mpk` for the basis dimensions.
    pub fn into_key(self, mpk: &MasterPublicKey) -> Result<MasterSecretKey, FormatError> {
        let seed = seed_from_b64(&self.seed, "seed")?;
        match (KeyBackend::parse(&self.backend), self.basis) {
            (Some(KeyBackend::OracleKey), None) => Ok(MasterSecretKey::OracleKey { seed }),
            (Some(KeyBackend::Basis), Some(rows)) => {
                let m = mpk.params.m();
                Ok(MasterSecretKey::Basis { basis: int_from_rows(&rows, (m, m), "T_A")?, seed })
            }
            (Some(b), _) => err(format!("msk fields do not match the {} backend", b.name())),
            (None, _) => err(format!("unknown backend `{}`", self.backend)),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct IdentityKeyJson {
    pub id: String,
    /// `m` rows of `n` entries.
    #[serde(rename = "R")]
    pub r: Vec<Vec<i64>>,
}

impl From<&IdentityKey> for IdentityKeyJson {
    fn from(k: &IdentityKey) -> Self {
        IdentityKeyJson { id: k.id.to_bit_string(), r: int_rows(&k.r) }
    }
}

impl IdentityKeyJson {
    pub fn into_key(self, params: &SchemeParams) -> Result<IdentityKey, FormatError> {
        let id = Identity::parse_bits(&self.id).ok_or_else(|| FormatError("id must be a bitstring".into()))?;
        if id.len() != params.n() {
            return err(format!("id has {} bits, expected {}", id.len(), params.n()));
        }
        Ok(IdentityKey { id, r: int_from_rows(&self.r, (params.m(), params.n()), "R")? })
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BranchJson {
    pub bits: String,
    pub amp: [f64; 2],
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct StateJson {
    pub width: usize,
    pub branches: Vec<BranchJson>,
}

fn branches_of(s: &SparseState) -> Vec<BranchJson> {
    s.branches()
        .iter()
        .map(|(b, a)| BranchJson { bits: b.to_string(s.width()), amp: [a.re, a.im] })
        .collect()
}

fn state_from(width: usize, branches: &[BranchJson]) -> Result<SparseState, FormatError> {
    let entries = branches.iter().map(|b| (b.bits.as_str(), Complex64::new(b.amp[0], b.amp[1])));
    SparseState::from_bitstrings(width, entries).map_err(|e| FormatError(e.to_string()))
}

impl From<&SparseState> for StateJson {
    fn from(s: &SparseState) -> Self {
        StateJson { width: s.width(), branches: branches_of(s) }
    }
}

impl TryFrom<&StateJson> for SparseState {
    type Error = FormatError;

    fn try_from(j: &StateJson) -> Result<Self, FormatError> {
        state_from(j.width, &j.branches)
    }
}

/// Plaintext state file: `n` message qubits.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PlaintextJson {
    pub n: usize,
    pub branches: Vec<BranchJson>,
}

impl From<&SparseState> for PlaintextJson {
    fn from(s: &SparseState) -> Self {
        PlaintextJson { n: s.width(), branches: branches_of(s) }
    }
}

impl TryFrom<&PlaintextJson> for SparseState {
    type Error = FormatError;

    fn try_from(j: &PlaintextJson) -> Result<Self, FormatError> {
        state_from(j.n, &j.branches)
    }
}

/// `--bits 1010`: a basis plaintext, MSB-first like every other bitstring.
pub fn plaintext_from_bits(bits: &str) -> Result<SparseState, FormatError> {
    let b = Bits::parse(bits).filter(|_| !bits.is_empty());
    match b {
        Some(b) => Ok(SparseState::from_bits(bits.len(), b)),
        None => err(format!("`{bits}` is not a bitstring")),
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CiphertextJson {
    pub c1: Vec<u64>,
    pub psi: StateJson,
    pub params_fingerprint: String,
}

impl CiphertextJson {
    pub fn new(ct: &Ciphertext, mpk: &MasterPublicKey) -> Self {
        CiphertextJson {
            c1: ct.c1.entries().to_vec(),
            psi: StateJson::from(&ct.psi),
            params_fingerprint: mpk_fingerprint(mpk),
        }
    }

    /// Checks the fingerprint against `mpk` and the ciphertext shape.
    pub fn into_ciphertext(self, mpk: &MasterPublicKey) -> Result<Ciphertext, FormatError> {
        if self.params_fingerprint != mpk_fingerprint(mpk) {
            return err("malformed ciphertext: params_fingerprint does not match the mpk");
        }
        let q = mpk.params.q();
        let ct = Ciphertext {
            c1: ZqVector::new(q, self.c1.clone()),
            psi: SparseState::try_from(&self.psi)
                .map_err(|e| FormatError(format!("malformed ciphertext: {e}")))?,
        };
        // ZqVector::new reduces; reject unreduced input instead of hiding it
        if self.c1.iter().any(|&v| v >= q) {
            return err("malformed ciphertext: c1 entry is not below q");
        }
        ct.validate(&mpk.params).map_err(|e| FormatError(e.to_string()))?;
        Ok(ct)
    }
}

/// Hex SHA-256 of the canonical mpk JSON, truncated to 16 bytes.
pub fn mpk_fingerprint(mpk: &MasterPublicKey) -> String {
    let json = serde_json::to_vec(&MpkJson::from(mpk)).expect("mpk serializes");
    hex::encode(&Sha256::digest(&json)[..16])
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GateJson {
    pub kind: String,
    pub controls: Vec<usize>,
    pub target: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RegisterJson {
    pub name: String,
    pub start: usize,
    pub len: usize,
    pub role: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CircuitJson {
    pub width: usize,
    pub registers: Vec<RegisterJson>,
    pub gates: Vec<GateJson>,
}

impl From<&Circuit> for CircuitJson {
    fn from(c: &Circuit) -> Self {
        CircuitJson {
            width: c.width(),
            registers: c
                .registers()
                .iter()
                .map(|r| RegisterJson {
                    name: r.name.clone(),
                    start: r.start,
                    len: r.len,
                    role: r.role.name().into(),
                })
                .collect(),
            gates: c
                .gates()
                .iter()
                .map(|g| GateJson {
                    kind: g.kind().name().into(),
                    controls: g.controls().to_vec(),
                    target: g.target(),
                })
                .collect(),
        }
    }
}

impl TryFrom<&CircuitJson> for Circuit {
    type Error = CircuitError;

    fn try_from(j: &CircuitJson) -> Result<Self, CircuitError> {
        let mut gates = Vec::with_capacity(j.gates.len());
        for g in &j.gates {
            let kind = GateKind::parse(&g.kind).ok_or_else(|| CircuitError::UnknownGateKind(g.kind.clone()))?;
            let gate = Gate::new(g.controls.clone(), g.target)?;
            if gate.kind() != kind {
                return Err(CircuitError::KindMismatch { kind, controls: g.controls.len() });
            }
            gates.push(gate);
        }
        let mut registers = Vec::with_capacity(j.registers.len());
        for r in &j.registers {
            let role = RegisterRole::parse(&r.role).ok_or_else(|| CircuitError::UnknownRegister(r.role.clone()))?;
            registers.push(Register { name: r.name.clone(), start: r.start, len: r.len, role });
        }
        Circuit::new(j.width, gates, registers)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ResourceJson {
    pub h: u64,
    pub s: u64,
    pub t: u64,
    pub cnot: u64,
    pub x: u64,
    pub qubits: u64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub toffoli: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub mcx: Option<u64>,
}

impl From<&ResourceReport> for ResourceJson {
    fn from(r: &ResourceReport) -> Self {
        ResourceJson {
            h: r.h,
            s: r.s,
            t: r.t,
            cnot: r.cnot,
            x: r.x,
            qubits: r.qubits,
            toffoli: r.toffoli,
            mcx: r.mcx,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use qibe_core::revcirc::build_decrypt_bit;
    use qibe_core::rng::seeded;
    use qibe_core::scheme::{hash_id, qencrypt, qextract, qkeygen, Preset};

    fn roundtrip<T: Serialize + for<'de> Deserialize<'de>>(v: &T) -> T {
        serde_json::from_str(&serde_json::to_string(v).unwrap()).unwrap()
    }

    #[test]
    fn keys_round_trip() {
        for preset in Preset::ALL {
            let p = preset.params();
            let (mpk, msk) = qkeygen(&p, preset.backend(), &mut seeded(1)).unwrap();
            let back = MasterPublicKey::try_from(roundtrip(&MpkJson::from(&mpk))).unwrap();
            assert_eq!(back, mpk);
            assert_eq!(roundtrip(&MskJson::from(&msk)).into_key(&mpk).unwrap(), msk);
            let id = Identity::from_label(b"alice", p.n());
            let sk = qextract(&mpk, &msk, &id).unwrap();
            assert_eq!(roundtrip(&IdentityKeyJson::from(&sk)).into_key(&p).unwrap(), sk);
        }
    }

    #[test]
    fn ciphertext_round_trip_and_fingerprint() {
        let p = Preset::Toy.params();
        let (mpk, msk) = qkeygen(&p, KeyBackend::OracleKey, &mut seeded(2)).unwrap();
        let id = Identity::parse_bits("0101").unwrap();
        let u = hash_id(&mpk, Some(&msk), &id).unwrap();
        let plain = plaintext_from_bits("1100").unwrap();
        let ct = qencrypt(&mpk, &u, &plain, &mut seeded(3)).unwrap();
        let j = roundtrip(&CiphertextJson::new(&ct, &mpk));
        assert_eq!(j.clone().into_ciphertext(&mpk).unwrap(), ct);

        let (other, _) = qkeygen(&p, KeyBackend::OracleKey, &mut seeded(4)).unwrap();
        assert!(j.clone().into_ciphertext(&other).is_err());
        let mut tampered = j;
        tampered.psi.branches[0].bits = format!("{:056b}", 12289u64 << 14);
        assert!(tampered.into_ciphertext(&mpk).unwrap_err().0.contains("malformed ciphertext"));
    }

    #[test]
    fn states_round_trip() {
        let s = SparseState::from_bitstrings(
            2,
            [("01", Complex64::new(0.6, 0.0)), ("10", Complex64::new(0.0, 0.8))],
        )
        .unwrap();
        assert_eq!(SparseState::try_from(&roundtrip(&StateJson::from(&s))).unwrap(), s);
        assert_eq!(SparseState::try_from(&roundtrip(&PlaintextJson::from(&s))).unwrap(), s);
        assert_eq!(plaintext_from_bits("1010").unwrap(), SparseState::from_basis(4, 0b1010).unwrap());
        assert!(plaintext_from_bits("").is_err());
    }

    #[test]
    fn circuit_round_trip() {
        let c = build_decrypt_bit(12, 101).unwrap();
        let j = roundtrip(&CircuitJson::from(&c));
        assert_eq!(Circuit::try_from(&j).unwrap(), c);
        let mut bad = j.clone();
        bad.gates[0].kind = "CCX".into();
        assert!(Circuit::try_from(&bad).is_err());
    }
}
