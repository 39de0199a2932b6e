use core::fmt;

use thiserror::Error;

/// Errors shared across the library.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("denominator must be nonzero")]
    ZeroDenominator,
    #[error("negative discriminant: complex quadratic fields are not supported")]
    NegativeDiscriminant,
    #[error("division by zero value")]
    DivisionByZero,
    #[error("Moebius action has a pole at this rational point")]
    Pole,
    #[error("matrix has determinant {0}, expected +1 or -1")]
    NotUnimodular(String),
    #[error("operation requires an irrational input")]
    RationalInput,
    #[error("expansion depth insufficient: {0}")]
    InsufficientDepth(String),
    #[error("not a bracketing Farey-neighbor pair: {0}")]
    FareyPrecondition(String),
    #[error("neither endpoint is a convergent: {0}")]
    SelectionEmpty(String),
    #[error("no synchronization pair (s, t) with s, t <= {cap}")]
    SyncNotFound { cap: usize },
    #[error("move list violates the slow-step grammar: {0}")]
    InvalidMoves(String),
}

/// A failed verification check, with the offending input and a
/// counterexample description. Produced by the per-module check functions
/// and surfaced as machine-readable failure records by the CLI suite.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CheckViolation {
    pub check: &'static str,
    pub input: String,
    pub detail: String,
}

impl fmt::Display for CheckViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} [{}]: {}", self.check, self.input, self.detail)
    }
}

impl std::error::Error for CheckViolation {}
