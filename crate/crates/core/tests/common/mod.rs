#![allow(dead_code)]

use qibe_core::revcirc::Circuit;
use qibe_core::sim::{Bits, SparseState};

/// Register values after running `c` (or its inverse) on a basis input.
pub struct Run<'a> {
    circuit: &'a Circuit,
    bits: Bits,
}

impl Run<'_> {
    pub fn get(&self, name: &str) -> u64 {
        self.bits.read(self.circuit.register(name).expect("register").qubits())
    }

    /// True when every ancilla and constant register is back at zero.
    pub fn clean(&self) -> bool {
        self.circuit.registers().iter().filter(|r| r.role.is_clean()).all(|r| self.get(&r.name) == 0)
    }

    pub fn bits(&self) -> &Bits {
        &self.bits
    }
}

pub fn input(c: &Circuit, values: &[(&str, u64)]) -> Bits {
    let mut bits = Bits::zero(c.width());
    for &(name, v) in values {
        let reg = c.register(name).expect("register");
        assert!(v >> reg.len == 0, "{v} does not fit {name}");
        bits.write(reg.qubits(), v);
    }
    bits
}

fn through(c: &Circuit, bits: Bits, circuit_to_apply: &Circuit) -> Bits {
    let out = SparseState::from_bits(c.width(), bits).apply(circuit_to_apply).expect("width");
    out.branches().keys().next().expect("one branch").clone()
}

/// Runs `c` through the simulator on a basis input.
pub fn run<'a>(c: &'a Circuit, values: &[(&str, u64)]) -> Run<'a> {
    let bits = through(c, input(c, values), c);
    Run { circuit: c, bits }
}

pub fn run_inverse<'a>(c: &'a Circuit, values: &[(&str, u64)]) -> Run<'a> {
    let bits = through(c, input(c, values), &c.invert());
    Run { circuit: c, bits }
}
