use thiserror::Error;

/// Errors raised while reading or writing the text formats.
#[derive(Debug, Error)]
pub enum IoError {
    #[error("{line}:{col}: {msg}")]
    Parse { line: usize, col: usize, msg: String },
    #[error("unsupported feature: {0}")]
    Unsupported(String),
    /// The parsed object breaks an invariant of the core model.
    #[error("invalid input: {0}")]
    InvariantViolation(#[source] acdkit::Error),
}

pub type IoResult<T> = std::result::Result<T, IoError>;

impl IoError {
    pub(crate) fn at(line: usize, col: usize, msg: impl Into<String>) -> Self {
        IoError::Parse {
            line,
            col,
            msg: msg.into(),
        }
    }
}

impl From<acdkit::Error> for IoError {
    fn from(e: acdkit::Error) -> Self {
        IoError::InvariantViolation(e)
    }
}
