use alloc::format;
use alloc::vec::Vec;

use num_complex::Complex64;
use rand_core::RngCore;

use super::classical::residual;
use super::{EncryptionRandomness, IdentityKey, MasterPublicKey, SchemeError};
use crate::lattice::{SchemeParams, ZqMatrix, ZqVector};
use crate::revcirc::{build_decrypt, build_encrypt, reg_name, Circuit, Qubit, CT, MSG};
use crate::sim::{Bits, SparseState};

/// `(c1, |psi>)`. `psi` holds `n` registers of `L` qubits; register `i`
/// occupies qubits `i L .. (i + 1) L`, least significant bit first.
#[derive(Debug, Clone, PartialEq)]
pub struct Ciphertext {
    pub c1: ZqVector,
    pub psi: SparseState,
}

impl Ciphertext {
    /// The `n` register values and the amplitude of every branch of `psi`.
    pub fn branch_values(&self, params: &SchemeParams) -> Vec<(Vec<u64>, Complex64)> {
        let l = params.bit_len();
        self.psi
            .branches()
            .iter()
            .map(|(b, &amp)| ((0..params.n()).map(|i| b.read(i * l..(i + 1) * l)).collect(), amp))
            .collect()
    }

    /// Shape checks: `c1` has `m` entries below `q`, `psi` is `n L` qubits
    /// wide and every register value is below `q`.
    pub fn validate(&self, params: &SchemeParams) -> Result<(), SchemeError> {
        let bad = |msg: &str| Err(SchemeError::MalformedCiphertext(msg.into()));
        if self.c1.len() != params.m() || self.c1.q() != params.q() {
            return bad("c1 has the wrong length or modulus");
        }
        if self.c1.entries().iter().any(|&v| v >= params.q()) {
            return bad("c1 entry is not reduced mod q");
        }
        if self.psi.width() != params.n() * params.bit_len() {
            return bad("psi has the wrong width");
        }
        if self.branch_values(params).iter().any(|(v, _)| v.iter().any(|&x| x >= params.q())) {
            return bad("psi branch value is not below q");
        }
        Ok(())
    }
}

fn register_starts(c: &Circuit, base: &str, n: usize) -> Result<Vec<Qubit>, SchemeError> {
    (0..n).map(|i| Ok(c.expect_register(&reg_name(base, i))?.start)).collect()
}

fn register_qubits(c: &Circuit, base: &str, n: usize) -> Result<Vec<Qubit>, SchemeError> {
    let mut out = Vec::new();
    for i in 0..n {
        out.extend(c.expect_register(&reg_name(base, i))?.qubits());
    }
    Ok(out)
}

/// Names of registers that are not |0> on every branch, ignoring `keep`.
fn dirty_registers(c: &Circuit, state: &SparseState, keep: &[&str]) -> Vec<alloc::string::String> {
    c.registers()
        .iter()
        .filter(|r| !keep.iter().any(|k| r.name.starts_with(&format!("{k}["))))
        .filter(|r| !state.is_register_zero(r))
        .map(|r| r.name.clone())
        .collect()
}

/// Encrypts with fresh randomness. `u = H(id)`.
pub fn qencrypt<R: RngCore + ?Sized>(
    mpk: &MasterPublicKey,
    u: &ZqMatrix,
    plaintext: &SparseState,
    rng: &mut R,
) -> Result<Ciphertext, SchemeError> {
    let randomness = EncryptionRandomness::sample(&mpk.params, rng);
    qencrypt_with(mpk, u, plaintext, &randomness)
}

/// Encrypts `plaintext` (width `n`) with the given randomness: the masks
/// `x = U^T s + e0` are computed classically and each message qubit runs
/// through its encryption circuit.
pub fn qencrypt_with(
    mpk: &MasterPublicKey,
    u: &ZqMatrix,
    plaintext: &SparseState,
    randomness: &EncryptionRandomness,
) -> Result<Ciphertext, SchemeError> {
    let p = &mpk.params;
    if plaintext.width() != p.n() {
        return Err(SchemeError::InvalidArgument(format!(
            "plaintext has {} qubits, expected {}",
            plaintext.width(),
            p.n()
        )));
    }
    if (u.rows(), u.cols()) != (p.n(), p.n()) {
        return Err(SchemeError::InvalidArgument("H(id) must be n x n".into()));
    }
    let x = randomness.mask(p, u)?;
    let c = build_encrypt(x.entries(), p.q())?;
    let msg = register_starts(&c, MSG, p.n())?;
    let state = plaintext.embed(c.width(), &msg)?.apply(&c)?;

    let dirty = dirty_registers(&c, &state, &[CT]);
    if !dirty.is_empty() {
        return Err(SchemeError::EntangledAncilla(format!("{dirty:?}")));
    }
    let psi = state.project_qubits(&register_qubits(&c, CT, p.n())?)?;
    Ok(Ciphertext { c1: randomness.c1(mpk)?, psi })
}

/// Decrypts to the `n`-qubit message state.
///
/// Every work register must come back |0> and the ciphertext registers
/// must be left holding one branch-independent value whose distance to
/// `y` is inside the `floor(q/8)` noise margin; anything else is a
/// [`SchemeError::DecryptionFailure`], never a silently wrong state.
pub fn qdecrypt(
    mpk: &MasterPublicKey,
    sk: &IdentityKey,
    ct: &Ciphertext,
) -> Result<SparseState, SchemeError> {
    let p = &mpk.params;
    ct.validate(p)?;
    if (sk.r.rows(), sk.r.cols()) != (p.m(), p.n()) {
        return Err(SchemeError::InvalidArgument("identity key has the wrong shape".into()));
    }
    let y = sk.r.transpose_mul_mod(&ct.c1)?;
    let c = build_decrypt(y.entries(), p.q())?;
    let ct_qubits = register_qubits(&c, CT, p.n())?;
    let state = ct.psi.embed(c.width(), &ct_qubits)?.apply(&c)?;

    let dirty = dirty_registers(&c, &state, &[CT, MSG]);
    if !dirty.is_empty() {
        return Err(SchemeError::DecryptionFailure(format!("registers {dirty:?} are not |0>")));
    }
    let msg = register_starts(&c, MSG, p.n())?;
    let l = p.bit_len();
    let margin = (p.q() / 8) as i64;
    for b in state.branches().keys() {
        for (i, &mq) in msg.iter().enumerate() {
            // ct[i] now holds c0_i - floor(q/2) m_i
            let left = b.read(ct_qubits[i * l..(i + 1) * l].iter().copied());
            let r = residual(left, y.get(i), false, p.q());
            if r.abs() >= margin {
                let bit = u8::from(b.get(mq));
                return Err(SchemeError::DecryptionFailure(format!(
                    "bit {i} decoded as {bit} with residual noise {r}, outside +-{margin}"
                )));
            }
        }
    }
    state.project_qubits(&msg).map_err(|_| {
        SchemeError::DecryptionFailure("message is entangled with the ciphertext registers".into())
    })
}

/// `n`-qubit basis state for a bit vector (`bits[i]` on qubit `i`).
pub fn basis_plaintext(bits: &[bool]) -> SparseState {
    let mut b = Bits::zero(bits.len());
    for (i, &v) in bits.iter().enumerate() {
        b.set(i, v);
    }
    SparseState::from_bits(bits.len(), b)
}
