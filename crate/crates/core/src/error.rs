use thiserror::Error;

/// Errors raised by the library.
///
/// The CLI maps the variants onto distinct exit codes, so new variants should
/// be slotted into one of the existing kinds (see [`Error::kind`]).
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("invalid root system {family}{rank}: {reason}")]
    InvalidType {
        family: String,
        rank: usize,
        reason: String,
    },
    #[error("weight {weight} has length {got}, expected rank {expected}")]
    RankMismatch {
        weight: String,
        got: usize,
        expected: usize,
    },
    #[error("weight {0} is not dominant")]
    NotDominant(String),
    #[error("{0} is not a prime")]
    NotPrime(u64),
    #[error("module of dimension {dim} exceeds the size cap {cap}")]
    SizeCap { dim: String, cap: usize },
    #[error("matrix is not unipotent: rank of (u - 1)^k stabilises at {stable_rank} > 0")]
    NotUnipotent { stable_rank: usize },
    #[error("{0} is not a root of the datum")]
    NotARoot(String),
    #[error("inadmissible request: {0}")]
    Inadmissible(String),
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("weight {weight} lies beyond the depth limit {limit} of a truncated table")]
    BeyondDepthLimit { weight: String, limit: u32 },
    #[error("corrupt weight table: {0}")]
    CorruptTable(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("internal invariant violated: {0}")]
    Internal(String),
}

/// Coarse classification used for exit statuses.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ErrorKind {
    Usage,
    Precondition,
    SizeCap,
    Internal,
}

impl Error {
    pub fn kind(&self) -> ErrorKind {
        match self {
            Error::Parse(_) | Error::InvalidType { .. } | Error::RankMismatch { .. } => {
                ErrorKind::Usage
            }
            Error::SizeCap { .. } => ErrorKind::SizeCap,
            Error::Internal(_) | Error::CorruptTable(_) => ErrorKind::Internal,
            _ => ErrorKind::Precondition,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
