use thiserror::Error;

/// Crate-wide error type. Variants map onto the CLI exit codes: usage and
/// parse problems exit 2, `NotInClass` exits 3, `Resource` exits 4.
#[derive(Debug, Error)]
pub enum Error {
    #[error("argument out of range: {0}")]
    Argument(String),

    #[error("parse error at byte {pos}: {msg}")]
    Parse { pos: usize, msg: String },

    #[error("resource guard exceeded: {0}")]
    Resource(String),

    #[error("input graph outside the declared class: {0}")]
    NotInClass(String),

    #[error("inconsistent input: {0}")]
    Inconsistent(String),

    #[error("catalog mismatch: {0}")]
    CatalogMismatch(String),

    #[error("size mismatch: {0}")]
    SizeMismatch(String),

    #[error("io error: {0}")]
    Io(#[from] std::io::Error),

    #[error("json error: {0}")]
    Json(#[from] serde_json::Error),

    #[error("internal error: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    /// Exit code for the CLI. 0 = accept/success and 1 = reject are decided
    /// by command logic, not by errors.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::NotInClass(_) => 3,
            Error::Resource(_) => 4,
            _ => 2,
        }
    }
}
