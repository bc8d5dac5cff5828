//! Exact sparse simulation of X-family circuits.
//!
//! X-family gates permute basis states, so a state is just a map from basis
//! states to amplitudes and a circuit only ever rewrites the keys. Amplitudes
//! are never touched, which keeps norms and fidelities exact.

mod bits;

use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec::Vec;

pub use bits::Bits;
use num_complex::Complex64;

use crate::revcirc::{Circuit, Qubit, Register};

/// Accepted deviation of a user-supplied state from unit norm.
pub const NORM_TOLERANCE: f64 = 1e-6;

/// Accepted states further than this from unit norm are rescaled.
const RESCALE_THRESHOLD: f64 = 1e-12;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum StateError {
    #[error("value does not fit in {width} qubits")]
    Overflow { width: usize },
    #[error("state norm is {norm}, expected 1")]
    NotNormalized { norm: f64 },
    #[error("basis state {0} listed twice")]
    DuplicateBranch(String),
    #[error("state is empty")]
    Empty,
    #[error("width mismatch: expected {expected}, got {got}")]
    WidthMismatch { expected: usize, got: usize },
    #[error("qubit {qubit} is outside a state of width {width}")]
    QubitOutOfRange { qubit: Qubit, width: usize },
    #[error("the requested qubits are entangled with the rest of the state")]
    Entangled,
    #[error("invalid bitstring `{0}`")]
    InvalidBitstring(String),
}

/// Superposition of basis states with non-zero amplitudes and unit norm.
#[derive(Debug, Clone, PartialEq)]
pub struct SparseState {
    width: usize,
    branches: BTreeMap<Bits, Complex64>,
}

impl SparseState {
    pub fn from_basis(width: usize, value: u64) -> Result<Self, StateError> {
        let bits = Bits::from_u64(width, value).ok_or(StateError::Overflow { width })?;
        Ok(Self::from_bits(width, bits))
    }

    /// Single-branch state; `bits` must already fit in `width`.
    pub fn from_bits(width: usize, bits: Bits) -> Self {
        debug_assert!(bits.fits(width));
        let mut branches = BTreeMap::new();
        branches.insert(bits, Complex64::new(1.0, 0.0));
        SparseState { width, branches }
    }

    /// Builds a state from explicit branches. Zero amplitudes are dropped and
    /// the result is rescaled to unit norm after the tolerance check (unless it
    /// is already within `1e-12`).
    pub fn from_superposition(
        width: usize,
        entries: impl IntoIterator<Item = (Bits, Complex64)>,
    ) -> Result<Self, StateError> {
        let mut branches = BTreeMap::new();
        for (bits, amp) in entries {
            if !bits.fits(width) {
                return Err(StateError::Overflow { width });
            }
            let key = bits.to_string(width);
            if branches.insert(bits, amp).is_some() {
                return Err(StateError::DuplicateBranch(key));
            }
        }
        branches.retain(|_, a: &mut Complex64| a.norm_sqr() > 0.0);
        let norm: f64 = branches.values().map(|a| a.norm_sqr()).sum();
        if branches.is_empty() {
            return Err(StateError::Empty);
        }
        if (norm - 1.0).abs() > NORM_TOLERANCE {
            return Err(StateError::NotNormalized { norm });
        }
        // leave already-normalized input bit-exact
        if (norm - 1.0).abs() > RESCALE_THRESHOLD {
            let scale = 1.0 / libm::sqrt(norm);
            for a in branches.values_mut() {
                *a *= scale;
            }
        }
        Ok(SparseState { width, branches })
    }

    /// [`from_superposition`](Self::from_superposition) over integer basis values.
    pub fn from_values(
        width: usize,
        entries: impl IntoIterator<Item = (u64, Complex64)>,
    ) -> Result<Self, StateError> {
        let mut list = Vec::new();
        for (v, a) in entries {
            list.push((Bits::from_u64(width, v).ok_or(StateError::Overflow { width })?, a));
        }
        Self::from_superposition(width, list)
    }

    /// Parses MSB-first bitstring keys; each must be exactly `width` long.
    pub fn from_bitstrings<'a>(
        width: usize,
        entries: impl IntoIterator<Item = (&'a str, Complex64)>,
    ) -> Result<Self, StateError> {
        let mut list = Vec::new();
        for (s, a) in entries {
            let bits = Bits::parse(s)
                .filter(|_| s.len() == width)
                .ok_or_else(|| StateError::InvalidBitstring(s.into()))?;
            list.push((bits, a));
        }
        Self::from_superposition(width, list)
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn branches(&self) -> &BTreeMap<Bits, Complex64> {
        &self.branches
    }

    pub fn len(&self) -> usize {
        self.branches.len()
    }

    pub fn is_empty(&self) -> bool {
        self.branches.is_empty()
    }

    pub fn norm_sqr(&self) -> f64 {
        self.branches.values().map(|a| a.norm_sqr()).sum()
    }

    /// Amplitude of the basis state `value` (0 when absent).
    pub fn amplitude(&self, value: u64) -> Complex64 {
        Bits::from_u64(self.width, value)
            .and_then(|b| self.branches.get(&b).copied())
            .unwrap_or_default()
    }

    /// Runs `c` on every branch. The map stays the same size because each
    /// gate is a bijection on basis states.
    pub fn apply(&self, c: &Circuit) -> Result<SparseState, StateError> {
        if c.width() != self.width {
            return Err(StateError::WidthMismatch { expected: c.width(), got: self.width });
        }
        let branches: BTreeMap<_, _> = self
            .branches
            .iter()
            .map(|(bits, &amp)| {
                let mut b = bits.clone();
                b.apply_gates(c.gates());
                (b, amp)
            })
            .collect();
        debug_assert_eq!(branches.len(), self.branches.len());
        Ok(SparseState { width: self.width, branches })
    }

    fn check_qubits(&self, qubits: &[Qubit]) -> Result<(), StateError> {
        match qubits.iter().find(|&&q| q >= self.width) {
            Some(&qubit) => Err(StateError::QubitOutOfRange { qubit, width: self.width }),
            None => Ok(()),
        }
    }

    /// True iff every branch has all of `reg`'s qubits at 0.
    pub fn is_register_zero(&self, reg: &Register) -> bool {
        self.are_qubits_zero(reg.qubits())
    }

    pub fn are_qubits_zero(&self, qubits: impl IntoIterator<Item = Qubit> + Clone) -> bool {
        self.branches.keys().all(|b| qubits.clone().into_iter().all(|q| !b.get(q)))
    }

    /// Set of values `reg` takes across the branches.
    pub fn register_values(&self, reg: &Register) -> Vec<u64> {
        let mut v: Vec<u64> = self.branches.keys().map(|b| b.read(reg.qubits())).collect();
        v.sort_unstable();
        v.dedup();
        v
    }

    /// Factors out `reg`, see [`project_qubits`](Self::project_qubits).
    pub fn project_register(&self, reg: &Register) -> Result<SparseState, StateError> {
        self.project_qubits(&reg.to_vec())
    }

    /// State of `qubits` (in the given order) when the rest of the state is
    /// one fixed basis state shared by every branch; errors otherwise.
    pub fn project_qubits(&self, qubits: &[Qubit]) -> Result<SparseState, StateError> {
        self.check_qubits(qubits)?;
        let mut mask = Bits::zero(self.width);
        for &q in qubits {
            mask.set(q, true);
        }
        let rest = |b: &Bits| -> Vec<bool> {
            (0..self.width).filter(|&q| !mask.get(q)).map(|q| b.get(q)).collect()
        };
        let mut shared: Option<Vec<bool>> = None;
        let mut branches = BTreeMap::new();
        for (b, &amp) in &self.branches {
            let r = rest(b);
            match &shared {
                Some(s) if *s != r => return Err(StateError::Entangled),
                Some(_) => {}
                None => shared = Some(r),
            }
            branches.insert(b.gather(qubits), amp);
        }
        Ok(SparseState { width: qubits.len(), branches })
    }

    /// Places this state on `positions` of a `width`-qubit register whose
    /// other qubits are |0>.
    pub fn embed(&self, width: usize, positions: &[Qubit]) -> Result<SparseState, StateError> {
        if positions.len() != self.width {
            return Err(StateError::WidthMismatch { expected: self.width, got: positions.len() });
        }
        if let Some(&qubit) = positions.iter().find(|&&q| q >= width) {
            return Err(StateError::QubitOutOfRange { qubit, width });
        }
        let branches = self
            .branches
            .iter()
            .map(|(b, &amp)| {
                let mut out = Bits::zero(width);
                for (i, &q) in positions.iter().enumerate() {
                    out.set(q, b.get(i));
                }
                (out, amp)
            })
            .collect();
        Ok(SparseState { width, branches })
    }

    /// `<self|other>`.
    pub fn inner(&self, other: &SparseState) -> Result<Complex64, StateError> {
        if self.width != other.width {
            return Err(StateError::WidthMismatch { expected: self.width, got: other.width });
        }
        Ok(self
            .branches
            .iter()
            .filter_map(|(b, a)| other.branches.get(b).map(|o| a.conj() * o))
            .sum())
    }

    /// `|<self|other>|^2 / (<self|self> <other|other>)`. Dividing out the
    /// norms absorbs the rounding left by normalization, so a state compared
    /// with an exact copy of itself gives exactly 1.
    pub fn fidelity(&self, other: &SparseState) -> Result<f64, StateError> {
        let overlap = self.inner(other)?.norm_sqr();
        Ok((overlap / (self.norm_sqr() * other.norm_sqr())).min(1.0))
    }
}
