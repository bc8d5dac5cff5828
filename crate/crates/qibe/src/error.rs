use std::fmt;

use qibe_core::scheme::SchemeError;

use crate::formats::FormatError;
use crate::frame::FrameError;

/// Process exit codes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Exit {
    Ok = 0,
    Input = 2,
    Contract = 3,
    DecryptFailure = 4,
    Framing = 5,
    Handshake = 6,
}

impl Exit {
    pub fn code(self) -> i32 {
        self as i32
    }
}

#[derive(Debug)]
pub struct CliError {
    pub exit: Exit,
    pub message: String,
}

impl CliError {
    pub fn new(exit: Exit, message: impl Into<String>) -> Self {
        CliError { exit, message: message.into() }
    }

    pub fn input(message: impl Into<String>) -> Self {
        Self::new(Exit::Input, message)
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.message)
    }
}

impl std::error::Error for CliError {}

impl From<SchemeError> for CliError {
    fn from(e: SchemeError) -> Self {
        let exit = match e {
            SchemeError::KeyContract | SchemeError::EntangledAncilla(_) => Exit::Contract,
            SchemeError::DecryptionFailure(_) => Exit::DecryptFailure,
            _ => Exit::Input,
        };
        CliError::new(exit, e.to_string())
    }
}

impl From<FormatError> for CliError {
    fn from(e: FormatError) -> Self {
        CliError::input(e.0)
    }
}

impl From<FrameError> for CliError {
    fn from(e: FrameError) -> Self {
        CliError::new(Exit::Framing, format!("framing error: {e}"))
    }
}
