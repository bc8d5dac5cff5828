//! Core machinery for a quantum identity-based encryption scheme over LWE.
//!
//! Everything here is `no_std` + `alloc`: modular linear algebra and
//! discrete Gaussian sampling ([`lattice`]), a reversible-circuit IR with
//! arithmetic builders and Clifford+T accounting ([`revcirc`]), an exact
//! sparse basis-state simulator ([`sim`]) and the four-algorithm scheme
//! together with its classical reference ([`scheme`]).
//!
//! IO, file formats and the command line live in the `qibe` crate.

#![cfg_attr(not(feature = "std"), no_std)]

extern crate alloc;

pub mod lattice;
pub mod revcirc;
pub mod rng;
pub mod scheme;
pub mod sim;

pub use lattice::{
    IntMatrix, IntVector, LatticeError, SchemeParams, ZqMatrix, ZqVector,
};
pub use revcirc::{Circuit, CircuitError, Gate, GateKind, ResourceReport};
pub use sim::{SparseState, StateError};
pub use scheme::{Ciphertext, ClassicalCiphertext, IdentityKey, SchemeError};
