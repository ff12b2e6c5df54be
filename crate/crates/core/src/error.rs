//! Error type shared by all modules.

use thiserror::Error;

#[derive(Debug, Clone, Error)]
pub enum Error {
    /// An operation received arguments outside its domain (zero input,
    /// non-monic polynomial, vector outside a lattice, ...).
    #[error("domain error: {0}")]
    Domain(String),

    /// Two values from different rings or fields were combined.
    #[error("ring mismatch: {0}")]
    RingMismatch(String),

    /// The coefficient field is not supported by the requested operation.
    /// Raised instead of ever returning a silently wrong answer.
    #[error("unsupported field: {0}")]
    UnsupportedField(String),

    /// An ideal failed a saturation precondition.
    #[error("ideal not saturated: {0}")]
    NotSaturated(String),

    /// The verified-relation search for a number-field exponent lattice ran
    /// out of precision escalations. The sound sublattice found so far is
    /// attached as HNF basis rows.
    #[error("relation search inconclusive (verified sublattice has {} basis vectors)", .sublattice.len())]
    Inconclusive { sublattice: Vec<Vec<i64>> },

    /// A finite search exceeded its configured budget.
    #[error("search budget exceeded: {0}")]
    BudgetExceeded(String),

    /// Radical binomial part of a positive-dimensional ideal needs the
    /// caller to supply a prime decomposition.
    #[error("prime decomposition required for positive-dimensional radical input")]
    PrimeDecompositionRequired,

    /// Input text failed to parse; positions are 1-based.
    #[error("parse error at line {line}, column {col}: {msg}")]
    Parse { line: usize, col: usize, msg: String },

    /// Invariant violation that indicates a bug rather than bad input.
    #[error("internal error: {0}")]
    Internal(String),
}

impl Error {
    pub fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }

    pub fn unsupported(msg: impl Into<String>) -> Self {
        Error::UnsupportedField(msg.into())
    }

    pub fn internal(msg: impl Into<String>) -> Self {
        Error::Internal(msg.into())
    }
}
