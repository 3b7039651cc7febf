use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid parameters: {0}")]
    InvalidParams(String),

    #[error("division by zero: {0}")]
    DivisionByZero(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("strand mismatch: {left} vs {right}")]
    StrandMismatch { left: usize, right: usize },

    #[error("{what} limit exceeded: {requested} > {limit}")]
    LimitExceeded {
        what: &'static str,
        requested: usize,
        limit: usize,
    },

    #[error("field mismatch: Q(zeta_{left}) vs Q(zeta_{right})")]
    FieldMismatch { left: usize, right: usize },

    #[error("parse error: {0}")]
    Parse(String),

    /// An internal consistency check failed; indicates a bug rather than bad input.
    #[error("internal consistency failure: {0}")]
    Internal(String),
}
