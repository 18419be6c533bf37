use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("parse error at position {pos}: {msg}")]
    Parse { pos: usize, msg: String },

    #[error("{0} is not pseudo-Anosov")]
    NotPseudoAnosov(String),

    #[error("element has finite order: {0}")]
    FiniteOrder(String),

    #[error("budget exhausted: {0}")]
    Budget(String),

    #[error("invalid input: {0}")]
    Invalid(String),
}

impl Error {
    pub(crate) fn parse(pos: usize, msg: impl Into<String>) -> Self {
        Error::Parse { pos, msg: msg.into() }
    }

    pub fn is_budget(&self) -> bool {
        matches!(self, Error::Budget(_))
    }
}

pub type Result<T> = std::result::Result<T, Error>;
