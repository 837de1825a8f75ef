use thiserror::Error;

/// Crate-wide error type.
#[derive(Debug, Clone, Error, PartialEq)]
pub enum Error {
    #[error("dimension mismatch: {left} vs {right} in {context}")]
    DimensionMismatch {
        left: usize,
        right: usize,
        context: &'static str,
    },

    #[error("shape mismatch: {left_rows}x{left_cols} vs {right_rows}x{right_cols}")]
    ShapeMismatch {
        left_rows: usize,
        left_cols: usize,
        right_rows: usize,
        right_cols: usize,
    },

    #[error("dense dimension {dim} exceeds cap {cap}")]
    DenseCapExceeded { dim: usize, cap: usize },

    #[error("target vector is not a permutation of 0..{dim}")]
    NotAPermutation { dim: usize },

    #[error("phase at column {index} has modulus {modulus}, expected 1")]
    NotUnimodular { index: usize, modulus: f64 },

    #[error("generator index {index} out of range 1..={max}")]
    IndexOutOfRange { index: usize, max: usize },

    #[error("basis index {index} out of range 1..={max}")]
    BasisIndexOutOfRange { index: usize, max: usize },

    #[error("generator count {m} exceeds supported maximum {max}")]
    RankTooLarge { m: usize, max: usize },

    #[error("generator count {m} too small: {context}")]
    RankTooSmall { m: usize, context: &'static str },

    #[error("elements live in different groups: m = {left} vs m = {right}")]
    GroupMismatch { left: usize, right: usize },

    #[error("enumeration cap exceeded: m = {m}, cap = {cap}")]
    EnumerationCapExceeded { m: usize, cap: usize },

    #[error("cannot parse group element from {input:?}: {reason}")]
    ElementParse { input: String, reason: String },

    #[error("cannot parse braid word from {input:?}: {reason}")]
    BraidWordParse { input: String, reason: String },

    #[error("phase constraint violated: {constraint} at {indices} (|violation| = {violation:.3e})")]
    PhaseConstraint {
        constraint: &'static str,
        indices: String,
        violation: f64,
    },

    #[error("invalid representation parameters: {reason}")]
    InvalidRepSpec { reason: String },

    #[error("operator is not an almost-complex structure: {reason}")]
    NotAlmostComplex { reason: &'static str },

    #[error("qubit count {qubits} not supported: {reason}")]
    UnsupportedQubitCount { qubits: usize, reason: &'static str },

    #[error("multiplicity by characters needs an even generator count, got m = {m}; use the commutant dimension instead")]
    OddRankCharacterCount { m: usize },

    #[error("JSON error: {0}")]
    Json(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Json(e.to_string())
    }
}
