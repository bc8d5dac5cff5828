//! Per-bit encryption and decryption circuits and their `n`-fold layouts.
//!
//! Register names carry the message-bit index, e.g. `msg[2]`, `ct[2]`.
//! The `n`-bit circuits are the per-bit circuits side by side on disjoint
//! qubits, so every resource count is exactly linear in `n`.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use super::arith::{self, ModAddQubits};
use super::builders::check_bit_length;
use super::{Circuit, CircuitBuilder, CircuitError, Gate, Qubit, RegisterRole};

/// Name of register `base` for message bit `i`.
pub fn reg_name(base: &str, i: usize) -> String {
    format!("{base}[{i}]")
}

pub const MSG: &str = "msg";
pub const CT: &str = "ct";

fn bit_len_of(q: u64) -> usize {
    (u64::BITS - q.leading_zeros()) as usize
}

fn check_constant(value: u64, q: u64) -> Result<(), CircuitError> {
    if value >= q {
        return Err(CircuitError::ConstantNotReduced { value, q });
    }
    Ok(())
}

/// Encryption of one message qubit against the classical mask `x_i`:
/// `|m_i>|0> -> |0>|(x_i + floor(q/2) m_i) mod q>`.
///
/// 1. controlled copy of `floor(q/2)` from `msg` into `ct`
/// 2. modular addition of `x_i` (loaded into a constant register)
/// 3. disentangle: xor `(x_i + floor(q/2)) mod q` into `ct`, flip `msg`
///    when `ct` is all zeros (MCX over X-conjugated `ct`), undo the xor
pub fn build_encrypt_bit(x: u64, q: u64) -> Result<Circuit, CircuitError> {
    build_encrypt(&[x], q)
}

/// `n`-fold [`build_encrypt_bit`] for the masks `xs`.
pub fn build_encrypt(xs: &[u64], q: u64) -> Result<Circuit, CircuitError> {
    let bits = bit_len_of(q);
    check_bit_length(q, bits)?;
    if xs.is_empty() {
        return Err(CircuitError::WidthTooSmall { what: "message length", min: 1, got: 0 });
    }
    let half = q / 2;
    let mut cb = CircuitBuilder::new();
    for (i, &x) in xs.iter().enumerate() {
        check_constant(x, q)?;
        let msg = cb.register(reg_name(MSG, i), 1, RegisterRole::Input);
        let ct = cb.register(reg_name(CT, i), bits, RegisterRole::Output);
        let ext = cb.register(reg_name("ct_ext", i), 1, RegisterRole::Ancilla);
        let operand = cb.register(reg_name("operand", i), bits, RegisterRole::Constant);
        let modulus = cb.register(reg_name("modulus", i), bits, RegisterRole::Constant);
        let flag = cb.register(reg_name("flag", i), 1, RegisterRole::Ancilla);
        let cin = cb.register(reg_name("carry_in", i), 1, RegisterRole::Ancilla);
        let mcx_anc = cb.register(reg_name("mcx_anc", i), bits - 2, RegisterRole::Ancilla);

        let ct_bits = ct.to_vec();
        let mut ct_ext = ct_bits.clone();
        ct_ext.push(ext.start);
        let operand_bits = operand.to_vec();
        let g = cb.gates_mut();

        // step 1
        arith::ctrl_copy_const(g, half, msg.start, &ct_bits);
        // step 2
        arith::const_xor(g, x, &operand_bits);
        let qubits = ModAddQubits {
            a: &operand_bits,
            b: &ct_ext,
            modulus: &modulus.to_vec(),
            flag: flag.start,
            carry_in: cin.start,
        };
        arith::mod_add(g, q, &qubits);
        arith::const_xor(g, x, &operand_bits);
        // step 3
        let one_pattern = (x + half) % q;
        arith::const_xor(g, one_pattern, &ct_bits);
        for &b in &ct_bits {
            g.push(Gate::x(b));
        }
        arith::mcx(g, &ct_bits, msg.start, &mcx_anc.to_vec());
        for &b in &ct_bits {
            g.push(Gate::x(b));
        }
        arith::const_xor(g, one_pattern, &ct_bits);
    }
    Ok(cb.finish())
}

/// Qubits of one decryption slice.
struct DecryptSlice {
    ct_ext: Vec<Qubit>,
    msg: Qubit,
    operand: Vec<Qubit>,
    modulus: Vec<Qubit>,
    flag: Qubit,
    carry_in: Qubit,
    abs_zero: Vec<Qubit>,
    copy: Vec<Qubit>,
}

impl DecryptSlice {
    fn mod_add_with<'a>(&'a self, addend: &'a [Qubit]) -> ModAddQubits<'a> {
        ModAddQubits {
            a: addend,
            b: &self.ct_ext,
            modulus: &self.modulus,
            flag: self.flag,
            carry_in: self.carry_in,
        }
    }
}

/// Steps 1-3 of decryption: `ct -> abs(((ct - y) mod q) - floor(q/2))`
/// over the `L+1`-qubit extended ciphertext register.
fn decrypt_forward(g: &mut Vec<Gate>, s: &DecryptSlice, y: u64, q: u64) {
    let half = q / 2;
    arith::const_xor(g, y, &s.operand);
    arith::mod_sub(g, q, &s.mod_add_with(&s.operand));
    arith::const_xor(g, y, &s.operand);

    arith::const_xor(g, half, &s.operand);
    arith::sub(g, &s.operand, &s.ct_ext, s.carry_in);
    arith::const_xor(g, half, &s.operand);

    arith::abs(g, &s.ct_ext, &s.abs_zero);
}

/// Decryption of one ciphertext register against `y_i = (R^T c1)_i`.
///
/// 1. modular subtraction of `y_i`
/// 2. subtraction of `floor(q/2)` in two's complement over `L+1` qubits
/// 3. absolute value
/// 4. `msg ^= [|b_i| < floor(q/4)]`, comparing the low `L` magnitude bits
/// 5. inverse of 3
/// 6. inverse of 2
/// 7. inverse of 1
/// 8. controlled copy of `floor(q/2)` from `msg` into a clean register
/// 9. modular subtraction of that copy from `ct`, leaving `x_i`
/// 10. inverse of 8
///
/// Afterwards `msg` holds the plaintext bit, `ct` holds the classical mask
/// `x_i` (identical on every branch) and every other register is |0>.
pub fn build_decrypt_bit(y: u64, q: u64) -> Result<Circuit, CircuitError> {
    build_decrypt(&[y], q)
}

/// `n`-fold [`build_decrypt_bit`] for the values `ys`.
pub fn build_decrypt(ys: &[u64], q: u64) -> Result<Circuit, CircuitError> {
    let bits = bit_len_of(q);
    check_bit_length(q, bits)?;
    if ys.is_empty() {
        return Err(CircuitError::WidthTooSmall { what: "message length", min: 1, got: 0 });
    }
    let (half, quarter) = (q / 2, q / 4);
    let mut cb = CircuitBuilder::new();
    for (i, &y) in ys.iter().enumerate() {
        check_constant(y, q)?;
        let ct = cb.register(reg_name(CT, i), bits, RegisterRole::Input);
        let ext = cb.register(reg_name("ct_ext", i), 1, RegisterRole::Ancilla);
        let msg = cb.register(reg_name(MSG, i), 1, RegisterRole::Output);
        let operand = cb.register(reg_name("operand", i), bits, RegisterRole::Constant);
        let modulus = cb.register(reg_name("modulus", i), bits, RegisterRole::Constant);
        let flag = cb.register(reg_name("flag", i), 1, RegisterRole::Ancilla);
        let cin = cb.register(reg_name("carry_in", i), 1, RegisterRole::Ancilla);
        let abs_zero = cb.register(reg_name("abs_zero", i), bits, RegisterRole::Ancilla);
        let copy = cb.register(reg_name("copy", i), bits, RegisterRole::Ancilla);

        let mut ct_ext = ct.to_vec();
        ct_ext.push(ext.start);
        let slice = DecryptSlice {
            ct_ext,
            msg: msg.start,
            operand: operand.to_vec(),
            modulus: modulus.to_vec(),
            flag: flag.start,
            carry_in: cin.start,
            abs_zero: abs_zero.to_vec(),
            copy: copy.to_vec(),
        };
        let g = cb.gates_mut();

        let mut forward = Vec::new();
        decrypt_forward(&mut forward, &slice, y, q);
        g.extend(forward.iter().cloned());

        // step 4
        arith::const_xor(g, quarter, &slice.operand);
        arith::compare(g, &slice.ct_ext[..bits], &slice.operand, slice.msg, slice.carry_in);
        arith::const_xor(g, quarter, &slice.operand);

        // steps 5-7
        g.extend(forward.into_iter().rev());

        // steps 8-10
        arith::ctrl_copy_const(g, half, slice.msg, &slice.copy);
        arith::mod_sub(g, q, &slice.mod_add_with(&slice.copy));
        arith::ctrl_copy_const(g, half, slice.msg, &slice.copy);
    }
    Ok(cb.finish())
}
