//! Crate-wide error type and exit-code mapping.

use thiserror::Error;

pub type CoxResult<T> = Result<T, CoxError>;

#[derive(Debug, Error)]
pub enum CoxError {
    #[error("division by zero")]
    DivisionByZero,

    #[error("invalid type specification: {0}")]
    Spec(String),

    #[error("argument error: {0}")]
    Argument(String),

    /// A build-time self-check failed; indicates a convention bug and aborts
    /// the construction rather than producing a silently wrong object.
    #[error("internal consistency error: {0}")]
    Internal(String),

    #[error("face budget exceeded: more than {0} faces")]
    BudgetExceeded(usize),

    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),

    #[error("serialization error: {0}")]
    Json(#[from] serde_json::Error),
}

impl CoxError {
    /// CLI exit code: 2 usage/spec errors, 3 resource budget, 4 i/o.
    pub fn exit_code(&self) -> i32 {
        match self {
            CoxError::Spec(_) | CoxError::Argument(_) => 2,
            CoxError::BudgetExceeded(_) => 3,
            CoxError::Io(_) | CoxError::Json(_) => 4,
            CoxError::DivisionByZero | CoxError::Internal(_) => 1,
        }
    }
}
