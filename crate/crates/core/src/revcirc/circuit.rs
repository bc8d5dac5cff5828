use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::ops::Range;

use super::{CircuitError, Gate, Qubit};

/// What a register carries on entry and exit.
///
/// `Ancilla` and `Constant` registers must enter as |0> and are left as |0>;
/// constants are loaded, used and unloaded inside the circuit.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum RegisterRole {
    Input,
    Output,
    Ancilla,
    Constant,
}

impl RegisterRole {
    pub fn name(self) -> &'static str {
        match self {
            RegisterRole::Input => "input",
            RegisterRole::Output => "output",
            RegisterRole::Ancilla => "ancilla",
            RegisterRole::Constant => "constant",
        }
    }

    pub fn parse(name: &str) -> Option<Self> {
        match name {
            "input" => Some(RegisterRole::Input),
            "output" => Some(RegisterRole::Output),
            "ancilla" => Some(RegisterRole::Ancilla),
            "constant" => Some(RegisterRole::Constant),
            _ => None,
        }
    }

    /// Entry and exit state are both |0>.
    pub fn is_clean(self) -> bool {
        matches!(self, RegisterRole::Ancilla | RegisterRole::Constant)
    }
}

/// Named contiguous qubit range; bit 0 of the value is qubit `start`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Register {
    pub name: String,
    pub start: Qubit,
    pub len: usize,
    pub role: RegisterRole,
}

impl Register {
    pub fn qubits(&self) -> Range<Qubit> {
        self.start..self.start + self.len
    }

    pub fn bit(&self, i: usize) -> Qubit {
        assert!(i < self.len, "bit {i} outside register {}", self.name);
        self.start + i
    }

    pub fn to_vec(&self) -> Vec<Qubit> {
        self.qubits().collect()
    }
}

/// Ordered X-family gate list over a register layout.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Circuit {
    width: usize,
    gates: Vec<Gate>,
    registers: Vec<Register>,
}

impl Circuit {
    /// Validates operand ranges and that registers are disjoint and in range.
    pub fn new(
        width: usize,
        gates: Vec<Gate>,
        registers: Vec<Register>,
    ) -> Result<Self, CircuitError> {
        for g in &gates {
            let top = g.max_qubit();
            if top >= width {
                return Err(CircuitError::QubitOutOfRange { qubit: top, width });
            }
        }
        let mut owner: Vec<Option<usize>> = alloc::vec![None; width];
        for (i, r) in registers.iter().enumerate() {
            if r.start + r.len > width {
                return Err(CircuitError::QubitOutOfRange { qubit: r.start + r.len - 1, width });
            }
            if registers[..i].iter().any(|o| o.name == r.name) {
                return Err(CircuitError::DuplicateRegister(r.name.clone()));
            }
            for q in r.qubits() {
                if owner[q].replace(i).is_some() {
                    return Err(CircuitError::OverlappingRegisters(r.name.clone()));
                }
            }
        }
        Ok(Self { width, gates, registers })
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn gates(&self) -> &[Gate] {
        &self.gates
    }

    pub fn registers(&self) -> &[Register] {
        &self.registers
    }

    pub fn register(&self, name: &str) -> Option<&Register> {
        self.registers.iter().find(|r| r.name == name)
    }

    /// Register lookup that reports the missing name.
    pub fn expect_register(&self, name: &str) -> Result<&Register, CircuitError> {
        self.register(name).ok_or_else(|| CircuitError::UnknownRegister(name.to_string()))
    }

    pub fn is_empty(&self) -> bool {
        self.gates.is_empty()
    }

    /// Reverses the gate order. Every gate in the IR is self-inverse, so this
    /// is the inverse circuit; the register table is kept.
    pub fn invert(&self) -> Circuit {
        Circuit {
            width: self.width,
            gates: self.gates.iter().rev().cloned().collect(),
            registers: self.registers.clone(),
        }
    }
}

/// Allocates registers front to back and collects gates.
#[derive(Debug, Default)]
pub struct CircuitBuilder {
    width: usize,
    gates: Vec<Gate>,
    registers: Vec<Register>,
}

impl CircuitBuilder {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn register(&mut self, name: impl Into<String>, len: usize, role: RegisterRole) -> Register {
        let reg = Register { name: name.into(), start: self.width, len, role };
        self.width += len;
        self.registers.push(reg.clone());
        reg
    }

    pub fn gates_mut(&mut self) -> &mut Vec<Gate> {
        &mut self.gates
    }

    pub fn finish(self) -> Circuit {
        Circuit::new(self.width, self.gates, self.registers).expect("builder keeps layout consistent")
    }
}
