//! Reversible-circuit IR over X-family gates, arithmetic builders,
//! Clifford+T lowering and resource counting.

mod arith;
mod builders;
mod circuit;
mod gate;
mod lower;
mod resources;
mod scheme_circuits;

use alloc::string::String;

pub use builders::{
    build_abs, build_adder, build_comparator, build_const_xor, build_ctrl_copy_const,
    build_fanout, build_mcx, build_mod_adder,
};
pub use circuit::{Circuit, CircuitBuilder, Register, RegisterRole};
pub use gate::{Gate, GateKind, LoweredGate, Qubit};
pub use lower::{lower_clifford_t, lower_toffoli, LoweredCircuit};
pub use resources::{count_lowered, count_resources, formula_resources, Algorithm, ResourceReport};
pub use scheme_circuits::{
    build_decrypt, build_decrypt_bit, build_encrypt, build_encrypt_bit, reg_name, CT, MSG,
};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum CircuitError {
    #[error("qubit {0} appears more than once in a gate")]
    DuplicateOperand(Qubit),
    #[error("qubit {qubit} is outside a circuit of width {width}")]
    QubitOutOfRange { qubit: Qubit, width: usize },
    #[error("register `{0}` overlaps another register")]
    OverlappingRegisters(String),
    #[error("register `{0}` is declared twice")]
    DuplicateRegister(String),
    #[error("no register named `{0}`")]
    UnknownRegister(String),
    #[error("{what} must be at least {min} (got {got})")]
    WidthTooSmall { what: &'static str, min: usize, got: usize },
    #[error("constant {value} does not fit in {bits} bits")]
    ConstantOutOfRange { value: u64, bits: usize },
    #[error("constant {value} is not reduced modulo {q}")]
    ConstantNotReduced { value: u64, q: u64 },
    #[error("bit length {bits} does not match q = {q} (need 2^(L-1) <= q < 2^L)")]
    BitLengthMismatch { q: u64, bits: usize },
    #[error("unknown gate kind `{0}`")]
    UnknownGateKind(String),
    #[error("gate kind {kind} does not match {controls} controls")]
    KindMismatch { kind: GateKind, controls: usize },
}
