use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("index {index} out of range (must be below {bound})")]
    IndexOutOfRange { index: usize, bound: usize },

    #[error("dimension mismatch: {left} vs {right}")]
    DimensionMismatch { left: usize, right: usize },

    #[error("degree mismatch: expected {expected}, found {found}")]
    DegreeMismatch { expected: usize, found: usize },

    #[error("invalid degree {degree}: {reason}")]
    InvalidDegree { degree: usize, reason: &'static str },

    #[error("degenerate simplex: {0}")]
    DegenerateSimplex(String),

    #[error("invalid complex: {0}")]
    InvalidComplex(String),

    #[error("operands belong to different complexes")]
    ComplexMismatch,

    #[error("cochain is not closed")]
    NotClosed,

    #[error("chain is not a cycle")]
    NotCycle,

    #[error("internal invariant violated: {0}")]
    Invariant(String),
}

impl Error {
    /// Stable machine-readable name, used in CLI error reports.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::IndexOutOfRange { .. } => "index_out_of_range",
            Error::DimensionMismatch { .. } => "dimension_mismatch",
            Error::DegreeMismatch { .. } => "degree_mismatch",
            Error::InvalidDegree { .. } => "invalid_degree",
            Error::DegenerateSimplex(_) => "degenerate_simplex",
            Error::InvalidComplex(_) => "invalid_complex",
            Error::ComplexMismatch => "complex_mismatch",
            Error::NotClosed => "not_closed",
            Error::NotCycle => "not_cycle",
            Error::Invariant(_) => "invariant",
        }
    }
}
