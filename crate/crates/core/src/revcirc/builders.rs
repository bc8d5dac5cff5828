//! Stand-alone arithmetic circuits, one register table each.

use super::arith;
use super::{Circuit, CircuitBuilder, CircuitError, RegisterRole};

fn require_width(what: &'static str, got: usize, min: usize) -> Result<(), CircuitError> {
    if got < min {
        return Err(CircuitError::WidthTooSmall { what, min, got });
    }
    Ok(())
}

fn require_fits(value: u64, bits: usize) -> Result<(), CircuitError> {
    if bits < 64 && value >> bits != 0 {
        return Err(CircuitError::ConstantOutOfRange { value, bits });
    }
    Ok(())
}

/// Registers `a` (l), `b` (l+1), `carry_in` (ancilla): `|a, b> -> |a, a + b>`
/// with the final carry in the top qubit of `b`.
///
/// The inverse circuit subtracts: `|a, b> -> |a, (b - a) mod 2^(l+1)>`, so
/// the top qubit of `b` ends up 1 exactly when `b < a`.
pub fn build_adder(l: usize) -> Result<Circuit, CircuitError> {
    require_width("adder width", l, 1)?;
    let mut cb = CircuitBuilder::new();
    let a = cb.register("a", l, RegisterRole::Input);
    let b = cb.register("b", l + 1, RegisterRole::Output);
    let cin = cb.register("carry_in", 1, RegisterRole::Ancilla);
    arith::add(cb.gates_mut(), &a.to_vec(), &b.to_vec(), cin.start);
    Ok(cb.finish())
}

/// Registers `a`, `b` (L each), plus ancillas: `|a, b> -> |a, (a + b) mod q>`
/// for `a, b < q`. Inputs `>= q` are outside the contract.
pub fn build_mod_adder(q: u64, bits: usize) -> Result<Circuit, CircuitError> {
    check_bit_length(q, bits)?;
    let mut cb = CircuitBuilder::new();
    let a = cb.register("a", bits, RegisterRole::Input);
    let b = cb.register("b", bits, RegisterRole::Output);
    let carry = cb.register("carry", 1, RegisterRole::Ancilla);
    let modulus = cb.register("modulus", bits, RegisterRole::Constant);
    let flag = cb.register("flag", 1, RegisterRole::Ancilla);
    let cin = cb.register("carry_in", 1, RegisterRole::Ancilla);
    let mut b_ext = b.to_vec();
    b_ext.push(carry.start);
    let qubits = arith::ModAddQubits {
        a: &a.to_vec(),
        b: &b_ext,
        modulus: &modulus.to_vec(),
        flag: flag.start,
        carry_in: cin.start,
    };
    arith::mod_add(cb.gates_mut(), q, &qubits);
    Ok(cb.finish())
}

/// Registers `a`, `b` (l each), `flag`: `flag ^= [a < b]`.
pub fn build_comparator(l: usize) -> Result<Circuit, CircuitError> {
    require_width("comparator width", l, 1)?;
    let mut cb = CircuitBuilder::new();
    let a = cb.register("a", l, RegisterRole::Input);
    let b = cb.register("b", l, RegisterRole::Input);
    let flag = cb.register("flag", 1, RegisterRole::Output);
    let cin = cb.register("carry_in", 1, RegisterRole::Ancilla);
    arith::compare(cb.gates_mut(), &a.to_vec(), &b.to_vec(), flag.start, cin.start);
    Ok(cb.finish())
}

/// `|k, 0> -> |k, d*k>`: one CX per set bit of `d`.
pub fn build_ctrl_copy_const(d: u64, l: usize) -> Result<Circuit, CircuitError> {
    require_fits(d, l)?;
    let mut cb = CircuitBuilder::new();
    let control = cb.register("control", 1, RegisterRole::Input);
    let target = cb.register("target", l, RegisterRole::Output);
    arith::ctrl_copy_const(cb.gates_mut(), d, control.start, &target.to_vec());
    Ok(cb.finish())
}

/// `|t> -> |t xor d>`.
pub fn build_const_xor(d: u64, l: usize) -> Result<Circuit, CircuitError> {
    require_fits(d, l)?;
    let mut cb = CircuitBuilder::new();
    let target = cb.register("target", l, RegisterRole::Output);
    arith::const_xor(cb.gates_mut(), d, &target.to_vec());
    Ok(cb.finish())
}

/// `|k, 0> -> |k, k>` with `l` CX gates.
pub fn build_fanout(l: usize) -> Result<Circuit, CircuitError> {
    let mut cb = CircuitBuilder::new();
    let src = cb.register("source", l, RegisterRole::Input);
    let dst = cb.register("target", l, RegisterRole::Output);
    arith::fanout(cb.gates_mut(), &src.to_vec(), &dst.to_vec());
    Ok(cb.finish())
}

/// `l`-controlled NOT as `max(1, 2l - 3)` Toffolis over `l - 2` ancillas.
pub fn build_mcx(l: usize) -> Result<Circuit, CircuitError> {
    require_width("MCX control count", l, 2)?;
    let mut cb = CircuitBuilder::new();
    let controls = cb.register("controls", l, RegisterRole::Input);
    let target = cb.register("target", 1, RegisterRole::Output);
    let anc = cb.register("ancilla", l - 2, RegisterRole::Ancilla);
    arith::mcx(cb.gates_mut(), &controls.to_vec(), target.start, &anc.to_vec());
    Ok(cb.finish())
}

/// Register `value` (L+1 qubits, two's complement, sign on top): when the
/// sign is 1 the low L bits become `2^L - low` (mod `2^L`), giving
/// `2^L + |v|` overall; otherwise identity.
pub fn build_abs(bits: usize) -> Result<Circuit, CircuitError> {
    require_width("abs magnitude width", bits, 1)?;
    let mut cb = CircuitBuilder::new();
    let value = cb.register("value", bits + 1, RegisterRole::Output);
    let zero = cb.register("zero", bits, RegisterRole::Ancilla);
    arith::abs(cb.gates_mut(), &value.to_vec(), &zero.to_vec());
    Ok(cb.finish())
}

pub(crate) fn check_bit_length(q: u64, bits: usize) -> Result<(), CircuitError> {
    let ok = (1..64).contains(&bits) && (1u64 << (bits - 1)) <= q && q < (1u64 << bits);
    if !ok {
        return Err(CircuitError::BitLengthMismatch { q, bits });
    }
    Ok(())
}
