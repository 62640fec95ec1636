use thiserror::Error;

use crate::format::FormatError;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid graph: {0}")]
    InvalidGraph(String),
    #[error("graph is not biconnected")]
    NotBiconnected,
    #[error("invalid cycle: {0}")]
    InvalidCycle(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("{what}: size {size} exceeds exhaustive-search cap {cap}")]
    CapExceeded {
        what: &'static str,
        size: usize,
        cap: usize,
    },
    #[error("unknown catalog instance `{0}`")]
    UnknownInstance(String),
    #[error("invalid parameters: {0}")]
    InvalidParams(String),
    /// A construction that should always succeed found nothing.
    #[error("guarantee violated: {0}")]
    GuaranteeViolated(String),
    #[error(transparent)]
    Format(#[from] FormatError),
}

impl Error {
    pub(crate) fn pre(msg: impl Into<String>) -> Self {
        Error::Precondition(msg.into())
    }
}
