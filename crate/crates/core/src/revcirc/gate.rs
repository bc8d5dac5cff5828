use alloc::vec::Vec;
use core::fmt;

use super::CircuitError;

pub type Qubit = usize;

/// X-family gate kinds; all controls have positive polarity.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum GateKind {
    X,
    CX,
    CCX,
    MCX,
}

impl GateKind {
    pub fn name(self) -> &'static str {
        match self {
            GateKind::X => "X",
            GateKind::CX => "CX",
            GateKind::CCX => "CCX",
            GateKind::MCX => "MCX",
        }
    }

    pub fn parse(name: &str) -> Option<Self> {
        match name {
            "X" => Some(GateKind::X),
            "CX" => Some(GateKind::CX),
            "CCX" => Some(GateKind::CCX),
            "MCX" => Some(GateKind::MCX),
            _ => None,
        }
    }

    fn for_controls(count: usize) -> Self {
        match count {
            0 => GateKind::X,
            1 => GateKind::CX,
            2 => GateKind::CCX,
            _ => GateKind::MCX,
        }
    }
}

impl fmt::Display for GateKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Flips `target` iff every control is 1. Self-inverse.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Gate {
    controls: Vec<Qubit>,
    target: Qubit,
}

impl Gate {
    /// Validates that the target and controls are pairwise distinct.
    pub fn new(controls: Vec<Qubit>, target: Qubit) -> Result<Self, CircuitError> {
        for (i, &c) in controls.iter().enumerate() {
            if c == target || controls[..i].contains(&c) {
                return Err(CircuitError::DuplicateOperand(c));
            }
        }
        Ok(Self { controls, target })
    }

    pub fn x(target: Qubit) -> Self {
        Self { controls: Vec::new(), target }
    }

    pub fn cx(control: Qubit, target: Qubit) -> Self {
        Self::new(alloc::vec![control], target).expect("distinct operands")
    }

    pub fn ccx(c0: Qubit, c1: Qubit, target: Qubit) -> Self {
        Self::new(alloc::vec![c0, c1], target).expect("distinct operands")
    }

    pub fn kind(&self) -> GateKind {
        GateKind::for_controls(self.controls.len())
    }

    pub fn controls(&self) -> &[Qubit] {
        &self.controls
    }

    pub fn target(&self) -> Qubit {
        self.target
    }

    pub(crate) fn max_qubit(&self) -> Qubit {
        self.controls.iter().copied().fold(self.target, Qubit::max)
    }

    /// Same gate with every operand passed through `map`.
    pub fn remapped(&self, map: impl Fn(Qubit) -> Qubit) -> Gate {
        Gate { controls: self.controls.iter().map(|&c| map(c)).collect(), target: map(self.target) }
    }
}

/// Clifford+T gate produced by lowering. Never simulated.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum LoweredGate {
    H(Qubit),
    S(Qubit),
    T(Qubit),
    Tdg(Qubit),
    X(Qubit),
    Cnot { control: Qubit, target: Qubit },
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn kind_follows_control_count() {
        assert_eq!(Gate::x(0).kind(), GateKind::X);
        assert_eq!(Gate::cx(0, 1).kind(), GateKind::CX);
        assert_eq!(Gate::ccx(0, 1, 2).kind(), GateKind::CCX);
        assert_eq!(Gate::new(alloc::vec![0, 1, 2], 3).unwrap().kind(), GateKind::MCX);
    }

    #[test]
    fn operands_must_be_distinct() {
        assert_eq!(Gate::new(alloc::vec![1], 1), Err(CircuitError::DuplicateOperand(1)));
        assert_eq!(Gate::new(alloc::vec![0, 2, 0], 1), Err(CircuitError::DuplicateOperand(0)));
    }

    #[test]
    fn names_round_trip() {
        for k in [GateKind::X, GateKind::CX, GateKind::CCX, GateKind::MCX] {
            assert_eq!(GateKind::parse(k.name()), Some(k));
        }
        assert_eq!(GateKind::parse("T"), None);
    }
}
