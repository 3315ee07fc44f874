use thiserror::Error;

/// Errors raised by the library. Mathematical negatives (an infeasible
/// system, a violated invariant in a validation report) are values, not
/// errors; this type covers malformed input and broken preconditions.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("structural error: {0}")]
    Structure(String),
    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("not a block-reversal step: {0}")]
    NotBlockReversal(String),
    #[error("invalid allowable sequence: {0}")]
    InvalidSequence(String),
    #[error("sequence is not simple")]
    NotSimple,
    #[error("arrangement violates a precondition: {0}")]
    Precondition(String),
    #[error("pair ({0}, {1}) never crosses or shares a segment")]
    DegenerateCrossing(usize, usize),
    #[error("argument out of range: {0}")]
    Range(String),
    #[error("pencil arrangement: {0}")]
    Pencil(String),
    #[error("internal verification failed: {0}")]
    Verification(String),
    #[error("json: {0}")]
    Json(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
