use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid sequence: {0}")]
    InvalidSequence(String),
    #[error("invalid unshuffle: {0}")]
    InvalidUnshuffle(String),
    #[error("underlying sets differ: {0}")]
    SetMismatch(String),
    #[error("invalid tree: {0}")]
    InvalidTree(String),
    #[error("label clash: {0}")]
    LabelClash(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("not a chain complex: {0}")]
    NotAComplex(String),
    #[error("integer overflow during exact elimination")]
    Overflow,
    #[error("unsupported: {0}")]
    Unsupported(String),
}

pub type Result<T> = std::result::Result<T, Error>;
