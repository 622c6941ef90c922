use thiserror::Error;

/// Errors raised by operations in this crate.
///
/// Verification operations distinguish a *structural* error (malformed input,
/// out-of-range indices, dimension mismatches) from an honest `false` verdict:
/// the former is an `Err`, the latter an `Ok(false)`.
#[derive(Error, Debug)]
pub enum Error {
    #[error("out of range: {0}")]
    Range(String),
    #[error("structural error: {0}")]
    Structural(String),
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("undefined value: {0}")]
    Undefined(String),
    #[error("rank condition failed in degree {degree}: {msg}")]
    Rank { degree: i64, msg: String },
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
