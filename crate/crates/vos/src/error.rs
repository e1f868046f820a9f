use thiserror::Error;

/// Errors shared by every module of the crate.
///
/// `Domain` marks inputs that violate a mathematical precondition (even
/// modulus where an odd one is required, a sequence that is not very odd,
/// inconsistent congruence systems, and so on).  `Size` marks requests that
/// are well formed but exceed an enumeration or scan bound; it carries the
/// exact magnitude so a caller can decide whether to retry with a larger cap.
#[derive(Debug, Error)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),

    #[error("size bound exceeded: {message} (magnitude {magnitude})")]
    Size { message: String, magnitude: String },
}

impl Error {
    pub fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }

    pub fn size(msg: impl Into<String>, magnitude: impl ToString) -> Self {
        Error::Size {
            message: msg.into(),
            magnitude: magnitude.to_string(),
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
