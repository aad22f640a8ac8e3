use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{what} out of range: {detail}")]
    Range { what: &'static str, detail: String },

    #[error("domain error: {0}")]
    Domain(String),

    #[error("oracle cap exceeded: n = {n} > cap {cap}")]
    OracleCap { n: usize, cap: usize },

    #[error("inexact division: {0}")]
    InexactDivision(String),

    #[error("non-real value where a real one was expected: {0}")]
    NonReal(String),

    #[error("closed form disagrees with exhaustive scan: {0}")]
    Inconsistent(String),

    #[error("invalid type vector: {0}")]
    InvalidType(String),
}

impl Error {
    pub(crate) fn range(what: &'static str, detail: impl Into<String>) -> Self {
        Error::Range {
            what,
            detail: detail.into(),
        }
    }
}
