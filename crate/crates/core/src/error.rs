use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    /// Arguments outside the mathematical domain of the operation.
    #[error("domain error: {0}")]
    Domain(String),

    /// A structural engine limit (window width, matrix order) was exceeded.
    #[error("capacity exceeded: {0}")]
    Capacity(String),

    /// A brute-force oracle would need more terms than its budget allows.
    #[error("oracle too large: {what} needs more than {budget} terms")]
    Budget { what: String, budget: u64 },
}

impl Error {
    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }

    pub(crate) fn capacity(msg: impl Into<String>) -> Self {
        Error::Capacity(msg.into())
    }

    pub(crate) fn budget(what: impl Into<String>, budget: u64) -> Self {
        Error::Budget {
            what: what.into(),
            budget,
        }
    }

    /// True for capacity and budget failures ("too big to check"), false for
    /// domain errors.
    pub fn is_resource_limit(&self) -> bool {
        !matches!(self, Error::Domain(_))
    }
}

pub type Result<T> = std::result::Result<T, Error>;
