use thiserror::Error;

/// Errors shared by every module in the crate.
#[derive(Debug, Error)]
pub enum Error {
    #[error("universe size {0} out of range (1..=62)")]
    UniverseRange(u64),

    #[error("element {element} out of range for universe [{n}] in set #{index}")]
    ElementOutOfRange { index: usize, element: u64, n: u32 },

    #[error("universe mismatch: {0} vs {1}")]
    UniverseMismatch(u32, u32),

    #[error("parameter out of range: {0}")]
    Range(String),

    #[error("capacity exceeded: {0}")]
    Capacity(String),

    #[error("precondition failed: {0}")]
    Precondition(String),

    #[error("family is not {0}-uniform")]
    NotUniform(u32),

    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
