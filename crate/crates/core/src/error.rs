use thiserror::Error;

/// Crate-wide error type.
#[derive(Error, Debug)]
pub enum Error {
    /// Requested precision is outside the supported range.
    #[error("precision: {0}")]
    Precision(String),
    /// `log_gamma` evaluated at (or within epsilon of) a nonpositive integer.
    #[error("gamma pole: {0}")]
    Pole(String),
    /// Interpolation nodes repeat.
    #[error("duplicate interpolation node: {0}")]
    DuplicateNode(String),
    /// Model parameters violate a domain constraint; the message names the constraint.
    #[error("parameter domain: {0}")]
    ParamDomain(String),
    /// A moment series failed to certify its tail.
    #[error("series convergence: {0}")]
    Convergence(String),
    /// The orthogonality system is numerically rank-deficient at this multi-index.
    #[error("index not normal: {0}")]
    NotNormal(String),
    /// A denominator in a coefficient ratio is below the safe threshold.
    #[error("division by near-zero: {0}")]
    DivisionByNearZero(String),
    /// A recurrence step was asked to run before its neighbor polynomials were cached.
    #[error("missing recurrence neighbor: {0}")]
    MissingNeighbor(String),
    /// A constructor produced a leading coefficient too far from 1.
    #[error("monicity: {0}")]
    Monicity(String),
    /// The simultaneous root iteration hit its iteration cap.
    #[error("root finder did not converge: {0}")]
    NoConvergence(String),
    /// The supplied moment table does not cover the requested orders.
    #[error("moment table too small: {0}")]
    MomentRange(String),
    /// Malformed numeric or configuration input.
    #[error("parse: {0}")]
    Parse(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
