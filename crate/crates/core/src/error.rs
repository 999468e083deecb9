use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("strand count mismatch: {0} vs {1}")]
    StrandMismatch(usize, usize),
    #[error("object mismatch: {0}")]
    ObjectMismatch(String),
    #[error("unsupported cobordism: {0}")]
    Unsupported(String),
    #[error("malformed input: {0}")]
    Malformed(String),
}
