use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("invalid root system {family}{rank}: {reason}")]
    InvalidKind {
        family: String,
        rank: usize,
        reason: &'static str,
    },
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("hypothesis on p violated: {0}")]
    Hypothesis(String),
    #[error("valuation is indeterminate: all known terms vanish below precision {0}")]
    Indeterminate(i64),
    #[error("not a unit: {0}")]
    NotUnit(String),
    #[error("unsupported field configuration: {0}")]
    Unsupported(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("internal invariant failed: {0}")]
    Invariant(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn pre<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Precondition(msg.into()))
}
