use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use crate::revcirc::{Gate, Qubit};

/// A computational basis state of arbitrary width, little-endian in 64-bit words.
///
/// Text form is MSB-first: the leftmost character is qubit `width - 1`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Bits(Vec<u64>);

impl Bits {
    pub fn zero(width: usize) -> Self {
        Bits(vec![0; width.div_ceil(64).max(1)])
    }

    pub fn get(&self, q: Qubit) -> bool {
        self.0.get(q / 64).is_some_and(|w| w >> (q % 64) & 1 == 1)
    }

    pub fn set(&mut self, q: Qubit, value: bool) {
        let (w, b) = (q / 64, q % 64);
        if value {
            self.0[w] |= 1 << b;
        } else {
            self.0[w] &= !(1 << b);
        }
    }

    pub fn flip(&mut self, q: Qubit) {
        self.0[q / 64] ^= 1 << (q % 64);
    }

    /// Value of `qubits` read little-endian (`qubits[0]` is bit 0). At most 64 qubits.
    pub fn read(&self, qubits: impl IntoIterator<Item = Qubit>) -> u64 {
        qubits.into_iter().enumerate().fold(0, |acc, (i, q)| acc | u64::from(self.get(q)) << i)
    }

    /// Writes the low bits of `value` into `qubits`, little-endian.
    pub fn write(&mut self, qubits: impl IntoIterator<Item = Qubit>, value: u64) {
        for (i, q) in qubits.into_iter().enumerate() {
            self.set(q, i < 64 && value >> i & 1 == 1);
        }
    }

    /// True when no qubit at or above `width` is set.
    pub fn fits(&self, width: usize) -> bool {
        (width..self.0.len() * 64).all(|q| !self.get(q))
    }

    /// `value` as a basis state of `width` qubits, or `None` if it does not fit.
    pub fn from_u64(width: usize, value: u64) -> Option<Self> {
        let mut b = Bits::zero(width);
        b.0[0] = value;
        b.fits(width).then_some(b)
    }

    pub fn apply_gate(&mut self, g: &Gate) {
        if g.controls().iter().all(|&c| self.get(c)) {
            self.flip(g.target());
        }
    }

    pub fn apply_gates(&mut self, gates: &[Gate]) {
        for g in gates {
            self.apply_gate(g);
        }
    }

    /// MSB-first bitstring over exactly `width` characters.
    pub fn to_string(&self, width: usize) -> String {
        (0..width).rev().map(|q| if self.get(q) { '1' } else { '0' }).collect()
    }

    /// Parses an MSB-first bitstring; its length is the width.
    pub fn parse(s: &str) -> Option<Self> {
        let width = s.len();
        let mut b = Bits::zero(width);
        for (i, ch) in s.bytes().enumerate() {
            match ch {
                b'0' => {}
                b'1' => b.set(width - 1 - i, true),
                _ => return None,
            }
        }
        Some(b)
    }

    /// Bits at `positions`, packed into a fresh state of width `positions.len()`.
    pub fn gather(&self, positions: &[Qubit]) -> Bits {
        let mut out = Bits::zero(positions.len());
        for (i, &q) in positions.iter().enumerate() {
            out.set(i, self.get(q));
        }
        out
    }
}
