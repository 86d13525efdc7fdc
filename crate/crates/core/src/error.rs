use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    /// An argument is outside the domain of the operation.
    #[error("domain error: {0}")]
    Domain(String),

    /// The exhaustive oracle refuses instances above its vertex cap.
    #[error("instance has {n} vertices, oracle cap is {cap}")]
    Resource { n: usize, cap: usize },

    #[error("parse error on line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error("truncation bounds differ: ({0}, {1}) vs ({2}, {3})")]
    BoundMismatch(usize, usize, usize, usize),
}

impl Error {
    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }
}
