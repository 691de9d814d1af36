use thiserror::Error;

/// Errors raised by every fallible operation in the crate.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// Input outside the mathematical domain of the operation.
    #[error("domain error: {0}")]
    Domain(String),
    /// A root selector or similar index out of range.
    #[error("index error: {0}")]
    Index(String),
    #[error("division by zero")]
    DivisionByZero,
    /// A precision, size or iteration cap was hit before the result could be certified.
    #[error("resource limit: {0}")]
    Resource(String),
    /// The forms of a self-map share a nontrivial common zero.
    #[error("not a morphism: {0}")]
    NotAMorphism(String),
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }

    pub(crate) fn resource(msg: impl Into<String>) -> Self {
        Error::Resource(msg.into())
    }

    pub(crate) fn parse(msg: impl Into<String>) -> Self {
        Error::Parse(msg.into())
    }
}
