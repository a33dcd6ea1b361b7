use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("subsystem index {index} out of range for {count} subsystems")]
    SubsystemOutOfRange { index: usize, count: usize },

    #[error("invalid subsystem selection: {0}")]
    InvalidSelection(String),

    #[error("total dimension {0} exceeds the dense simulation limit of {limit}", limit = crate::qcore::MAX_DIM)]
    TooLarge(usize),

    #[error("invalid state: {0}")]
    InvalidState(String),

    #[error("invalid channel: {0}")]
    InvalidChannel(String),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("C2 is not contained in C1: generator row {row} of C2 fails a parity check of C1")]
    NestingViolated { row: usize },

    #[error("code pair encodes no qubits (dim C1 = dim C2 = {0})")]
    NoEncodedQubits(usize),

    #[error("invalid linear code: {0}")]
    InvalidCode(String),

    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error("unknown bound scenario {0:?}")]
    UnknownScenario(String),
}
