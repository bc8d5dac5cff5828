use alloc::vec::Vec;

use super::{arith, Circuit, Gate, GateKind, LoweredGate, Qubit};

/// Clifford+T circuit. Only used for resource accounting.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LoweredCircuit {
    /// Source width plus any scratch qubits the MCX expansion needed.
    pub width: usize,
    pub gates: Vec<LoweredGate>,
}

/// Standard Toffoli network: 2 H, 1 S, 7 T/T†, 6 CNOT.
pub fn lower_toffoli(a: Qubit, b: Qubit, t: Qubit, out: &mut Vec<LoweredGate>) {
    use LoweredGate::*;
    let cnot = |control, target| Cnot { control, target };
    out.extend([
        H(t),
        cnot(b, t),
        Tdg(t),
        cnot(a, t),
        T(t),
        cnot(b, t),
        Tdg(t),
        cnot(a, t),
        Tdg(b),
        T(t),
        H(t),
        cnot(a, b),
        Tdg(b),
        cnot(a, b),
        T(a),
        S(b),
    ]);
}

/// Rewrites every gate into {H, S, T, T†, CNOT, X}.
///
/// CCX uses [`lower_toffoli`]; an `l`-controlled MCX is first expanded into
/// the `2l - 3` Toffoli ladder over `l - 2` scratch qubits appended after
/// the circuit (shared by all MCX gates, since the ladder restores them).
pub fn lower_clifford_t(c: &Circuit) -> LoweredCircuit {
    let scratch_base = c.width();
    let scratch = c
        .gates()
        .iter()
        .filter(|g| g.kind() == GateKind::MCX)
        .map(|g| g.controls().len() - 2)
        .max()
        .unwrap_or(0);
    let scratch_qubits: Vec<Qubit> = (scratch_base..scratch_base + scratch).collect();

    let mut out = Vec::with_capacity(c.gates().len() * 4);
    let mut expanded: Vec<Gate> = Vec::new();
    for g in c.gates() {
        match g.kind() {
            GateKind::X => out.push(LoweredGate::X(g.target())),
            GateKind::CX => {
                out.push(LoweredGate::Cnot { control: g.controls()[0], target: g.target() })
            }
            GateKind::CCX => lower_toffoli(g.controls()[0], g.controls()[1], g.target(), &mut out),
            GateKind::MCX => {
                expanded.clear();
                arith::mcx(&mut expanded, g.controls(), g.target(), &scratch_qubits);
                for t in &expanded {
                    lower_toffoli(t.controls()[0], t.controls()[1], t.target(), &mut out);
                }
            }
        }
    }
    LoweredCircuit { width: c.width() + scratch, gates: out }
}
