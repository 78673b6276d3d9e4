use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("parse error at offset {pos}: {msg}")]
    Parse { pos: usize, msg: String },
    #[error("cannot decode function name: {0}")]
    Decode(String),
    #[error("space mismatch: expected {expected}, found {found}")]
    SpaceMismatch { expected: String, found: String },
    #[error("unsupported level: {0}")]
    UnsupportedLevel(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("unknown table entry `{0}`")]
    UnknownTable(String),
}

pub type Result<T> = std::result::Result<T, Error>;
