//! File formats, framing, the session-key handshake and the command line
//! on top of `qibe-core`.

pub mod cli;
pub mod error;
pub mod formats;
pub mod frame;
pub mod handshake;

pub use error::{CliError, Exit};
