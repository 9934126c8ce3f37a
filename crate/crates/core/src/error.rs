use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid partition {0}")]
    InvalidPartition(String),
    #[error("syntax error at position {pos}: {msg}")]
    Syntax { pos: usize, msg: String },
    #[error("assignment does not set variable x{0}")]
    MissingVariable(u32),
    #[error("invalid register: {0}")]
    InvalidRegister(String),
    #[error("qubit index {index} out of range for a {n}-qubit register")]
    QubitOutOfRange { index: usize, n: usize },
    #[error("matrix is not unitary (deviation {0:.3e})")]
    NotUnitary(f64),
    #[error("operation requires {expected} mode")]
    ModeMismatch { expected: &'static str },
    #[error("parameter out of range: {0}")]
    OutOfRange(String),
    #[error("invalid permutation: {0}")]
    InvalidPermutation(String),
    #[error("internal error: {0}")]
    Internal(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
