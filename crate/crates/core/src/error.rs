use crate::density::DensityEnclosure;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("{what} = {value} exceeds the configured cap {cap}")]
    CapExceeded {
        what: &'static str,
        value: u64,
        cap: u64,
    },

    #[error("outside the domain of {operation}: {reason}")]
    Domain {
        operation: &'static str,
        reason: String,
    },

    #[error("value does not fit in 64 bits: {0}")]
    Overflow(String),

    #[error("congruence system has no solution: {0}")]
    NoSolution(String),

    /// The PIE enumeration ran out of its node budget. `partial` is still a
    /// certified enclosure, only wider than requested.
    #[error("PIE budget of {max_nodes} nodes exceeded; partial enclosure reported")]
    BudgetExceeded {
        max_nodes: u64,
        partial: Box<DensityEnclosure>,
    },

    #[error("parse error: {0}")]
    Parse(String),
}

impl Error {
    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidParameter(msg.into())
    }
}
