use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("parse error at {line}:{column}: {message}")]
    Parse {
        message: String,
        line: usize,
        column: usize,
    },

    /// A structure table is malformed (missing entry, index out of range).
    /// Distinct from a well-formed table that violates an axiom.
    #[error("malformed structure: {0}")]
    Structural(String),

    #[error("axiom `{axiom}` violated at {witness}")]
    Axiom { axiom: String, witness: String },

    #[error("arity mismatch: expected {expected}, got {got}")]
    Arity { expected: usize, got: usize },

    #[error("degree error: {0}")]
    Degree(String),

    #[error("variable count mismatch: {0} vs {1}")]
    VariableMismatch(usize, usize),

    #[error("index {index} out of range 1..={max}")]
    IndexOutOfRange { index: usize, max: usize },

    #[error("word order {needed} exceeds the cap {cap}")]
    WordOrderExceeded { needed: usize, cap: usize },

    #[error("exp requires nilpotent coefficients")]
    NotNilpotent,

    #[error("element is not a Maurer-Cartan element (residue {0})")]
    NotMaurerCartan(String),

    #[error("degree {p} is an edge degree of the window [{min}, {max}]")]
    EdgeDegree { p: i32, min: i32, max: i32 },

    #[error("bivector is not Poisson")]
    NotPoisson,

    #[error("insufficient input precision: output exact below {available}, need {needed}")]
    InsufficientPrecision { needed: u32, available: u32 },

    #[error("mismatched ambient: {0}")]
    Mismatch(String),

    #[error("json: {0}")]
    Json(String),
}

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Json(e.to_string())
    }
}
