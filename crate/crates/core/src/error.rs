use thiserror::Error;

/// Errors raised by the library.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("matrix is singular")]
    Singular,
    #[error("rows are dependent over Q(t): generic rank {rank} below row count {rows}")]
    RankDrop { rank: usize, rows: usize },
    #[error("tensor is not concise: {0}")]
    NotConcise(String),
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("no corank-one reduction applicable: {0}")]
    NoCorankOne(String),
    #[error("classification inconsistency: {0}")]
    Classification(String),
    #[error("internal consistency violation: {0}")]
    Inconsistency(String),
    #[error("unknown corpus key `{0}`")]
    UnknownKey(String),
    #[error("cannot parse `{0}` as a rational number")]
    Parse(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
