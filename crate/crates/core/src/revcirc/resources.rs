use super::{lower_clifford_t, Circuit, GateKind, LoweredCircuit, LoweredGate};

/// Gate and qubit counts.
///
/// In Clifford+T form `t` counts T and T† together. Pre-lowering reports
/// carry CX gates in `cnot` and the raw Toffoli / MCX counts in
/// `toffoli` / `mcx`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct ResourceReport {
    pub h: u64,
    pub s: u64,
    pub t: u64,
    pub cnot: u64,
    pub x: u64,
    pub qubits: u64,
    pub toffoli: Option<u64>,
    pub mcx: Option<u64>,
}

impl ResourceReport {
    /// Every count multiplied by `k`.
    pub fn scaled(&self, k: u64) -> ResourceReport {
        ResourceReport {
            h: self.h * k,
            s: self.s * k,
            t: self.t * k,
            cnot: self.cnot * k,
            x: self.x * k,
            qubits: self.qubits * k,
            toffoli: self.toffoli.map(|v| v * k),
            mcx: self.mcx.map(|v| v * k),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Algorithm {
    Encrypt,
    Decrypt,
}

impl Algorithm {
    pub fn parse(s: &str) -> Option<Self> {
        match s {
            "encrypt" => Some(Algorithm::Encrypt),
            "decrypt" => Some(Algorithm::Decrypt),
            _ => None,
        }
    }
}

/// Exact counts of `c`; with `lowered` the circuit is first rewritten by
/// [`lower_clifford_t`] (raw Toffoli/MCX counts are kept alongside).
pub fn count_resources(c: &Circuit, lowered: bool) -> ResourceReport {
    let mut raw = ResourceReport { qubits: c.width() as u64, ..Default::default() };
    let (mut toffoli, mut mcx) = (0, 0);
    for g in c.gates() {
        match g.kind() {
            GateKind::X => raw.x += 1,
            GateKind::CX => raw.cnot += 1,
            GateKind::CCX => toffoli += 1,
            GateKind::MCX => mcx += 1,
        }
    }
    raw.toffoli = Some(toffoli);
    raw.mcx = Some(mcx);
    if !lowered {
        return raw;
    }
    let mut report = count_lowered(&lower_clifford_t(c));
    report.toffoli = raw.toffoli;
    report.mcx = raw.mcx;
    report
}

pub fn count_lowered(c: &LoweredCircuit) -> ResourceReport {
    let mut r = ResourceReport { qubits: c.width as u64, ..Default::default() };
    for g in &c.gates {
        match g {
            LoweredGate::H(_) => r.h += 1,
            LoweredGate::S(_) => r.s += 1,
            LoweredGate::T(_) | LoweredGate::Tdg(_) => r.t += 1,
            LoweredGate::X(_) => r.x += 1,
            LoweredGate::Cnot { .. } => r.cnot += 1,
        }
    }
    r
}

/// Closed-form Clifford+T counts for `n` message qubits, `L` the bit-length of `q`:
///
/// | | encrypt | decrypt |
/// |---|---|---|
/// | H | `2n(10L - 3)` | `2n(34L + 4)` |
/// | S | `n(10L - 3)` | `n(34L + 4)` |
/// | T | `7n(10L - 3)` | `7n(34L + 4)` |
/// | CNOT | `floor(n(75.5L - 12))` | `n(269L + 63)` |
/// | qubits | `n(4L + 4)` | `n(6L + 4)` |
///
/// X gates are not part of the formulas and are reported as 0.
pub fn formula_resources(n: u64, q: u64, alg: Algorithm) -> ResourceReport {
    let l = (u64::BITS - q.leading_zeros()) as u64;
    let (toffoli_like, cnot, qubits) = match alg {
        // n(75.5L - 12) = n(151L - 24) / 2
        Algorithm::Encrypt => (n * (10 * l - 3), n * (151 * l - 24) / 2, n * (4 * l + 4)),
        Algorithm::Decrypt => (n * (34 * l + 4), n * (269 * l + 63), n * (6 * l + 4)),
    };
    ResourceReport {
        h: 2 * toffoli_like,
        s: toffoli_like,
        t: 7 * toffoli_like,
        cnot,
        x: 0,
        qubits,
        toffoli: None,
        mcx: None,
    }
}
