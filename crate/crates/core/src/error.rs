use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid cycle type: {0}")]
    InvalidCycleType(String),

    #[error("invalid permutation: {0}")]
    InvalidPermutation(String),

    #[error("not an involution: {0}")]
    NotInvolution(String),

    #[error("n = {n} exceeds the enumeration cap of {cap}; {hint}")]
    TooLarge {
        n: usize,
        cap: usize,
        hint: &'static str,
    },

    #[error("domain error: {0}")]
    Domain(String),

    /// One entry per violated precondition, so callers can report all of them.
    #[error("precondition violated: {}", .0.join("; "))]
    Precondition(Vec<String>),

    #[error("parse error: {0}")]
    Parse(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),

    #[error("config error: {0}")]
    Config(String),
}

impl Error {
    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }
}
