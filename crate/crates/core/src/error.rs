//! Error type shared across the crate.

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    /// An argument fell outside the mathematical domain of an operation.
    #[error("domain error: {0}")]
    Domain(String),

    /// A coefficient vector failed the admissibility requirement
    /// (all entries nonnegative and a₀ < 2a₁).
    #[error("inadmissible coefficient vector: {0}")]
    Inadmissible(String),

    /// The constant pipeline hit a nonpositive denominator.
    #[error("degenerate constants: {0}")]
    Degenerate(String),

    /// A search exhausted its budget without reaching a feasible state.
    #[error("infeasible search: {0}")]
    Infeasible(String),

    #[error("parse error: {0}")]
    Parse(#[from] serde_json::Error),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}
