//! Length-prefixed JSON frames: 4-byte big-endian payload length, one type
//! byte, then exactly that many bytes of UTF-8 JSON.

use std::io::{self, Read, Write};

use serde::de::DeserializeOwned;
use serde::Serialize;

/// Frames above this size are rejected before allocating.
pub const MAX_PAYLOAD: u32 = 16 << 20;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FrameKind {
    Hello = 0x01,
    IdMpk = 0x02,
    Ciphertext = 0x03,
    Ack = 0x04,
}

impl FrameKind {
    pub fn from_byte(b: u8) -> Option<Self> {
        match b {
            0x01 => Some(FrameKind::Hello),
            0x02 => Some(FrameKind::IdMpk),
            0x03 => Some(FrameKind::Ciphertext),
            0x04 => Some(FrameKind::Ack),
            _ => None,
        }
    }
}

#[derive(Debug, thiserror::Error)]
pub enum FrameError {
    #[error("frame truncated")]
    Truncated,
    #[error("unknown frame type 0x{0:02x}")]
    UnknownType(u8),
    #[error("frame payload of {0} bytes exceeds the limit")]
    TooLarge(u32),
    #[error("frame payload is not valid JSON: {0}")]
    BadPayload(String),
    #[error("expected a {expected:?} frame, got {got:?}")]
    Unexpected { expected: FrameKind, got: FrameKind },
    #[error("i/o error: {0}")]
    Io(#[from] io::Error),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Frame {
    pub kind: FrameKind,
    pub payload: Vec<u8>,
}

impl Frame {
    pub fn new<T: Serialize>(kind: FrameKind, body: &T) -> Self {
        Frame { kind, payload: serde_json::to_vec(body).expect("payload serializes") }
    }

    pub fn encode(&self) -> Vec<u8> {
        let mut out = Vec::with_capacity(5 + self.payload.len());
        out.extend_from_slice(&(self.payload.len() as u32).to_be_bytes());
        out.push(self.kind as u8);
        out.extend_from_slice(&self.payload);
        out
    }

    /// Parses the payload, which must be UTF-8 JSON.
    pub fn body<T: DeserializeOwned>(&self) -> Result<T, FrameError> {
        let text = std::str::from_utf8(&self.payload).map_err(|e| FrameError::BadPayload(e.to_string()))?;
        serde_json::from_str(text).map_err(|e| FrameError::BadPayload(e.to_string()))
    }

    pub fn expect<T: DeserializeOwned>(&self, kind: FrameKind) -> Result<T, FrameError> {
        if self.kind != kind {
            return Err(FrameError::Unexpected { expected: kind, got: self.kind });
        }
        self.body()
    }
}

fn read_full<R: Read>(r: &mut R, buf: &mut [u8]) -> Result<(), FrameError> {
    r.read_exact(buf).map_err(|e| match e.kind() {
        io::ErrorKind::UnexpectedEof => FrameError::Truncated,
        _ => FrameError::Io(e),
    })
}

pub fn read_frame<R: Read>(r: &mut R) -> Result<Frame, FrameError> {
    let mut header = [0u8; 5];
    read_full(r, &mut header)?;
    let len = u32::from_be_bytes(header[..4].try_into().expect("4 bytes"));
    let kind = FrameKind::from_byte(header[4]).ok_or(FrameError::UnknownType(header[4]))?;
    if len > MAX_PAYLOAD {
        return Err(FrameError::TooLarge(len));
    }
    let mut payload = vec![0u8; len as usize];
    read_full(r, &mut payload)?;
    Ok(Frame { kind, payload })
}

pub fn write_frame<W: Write>(w: &mut W, frame: &Frame) -> Result<(), FrameError> {
    w.write_all(&frame.encode())?;
    w.flush()?;
    Ok(())
}
