use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("field mismatch: Q(√{0}) vs Q(√{1})")]
    FieldMismatch(String, String),
    #[error("division by zero")]
    DivisionByZero,
    #[error("invalid continued fraction: {0}")]
    InvalidCF(String),
    #[error("word not in I_n: {0}")]
    NotInIn(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("bad generator index {0}")]
    BadIndex(u8),
    #[error("branch {branch} of track {label} has non-positive weight {weight}")]
    NonPositiveWeight {
        label: String,
        branch: usize,
        weight: String,
    },
    #[error("track encoding error: {0}")]
    EncodingError(String),
    #[error("degenerate (central) split at branch {0}")]
    DegenerateSplit(usize),
    #[error("track has no large branch")]
    NoLargeBranch,
    #[error("no cycle found within {0} steps")]
    NoCycleFound(usize),
    #[error("switch condition violated at switch {0}")]
    SwitchCondition(usize),
    #[error("{0}")]
    Io(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Io(e.to_string())
    }
}
