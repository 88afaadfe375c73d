use std::io;

use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    /// A mathematical precondition does not hold (zero inverse, invalid axis, …).
    #[error("domain error: {0}")]
    Domain(String),
    /// Mismatched groups, unsupported parameters, bad arguments.
    #[error("usage error: {0}")]
    Usage(String),
    /// Malformed QSIG or PPM input.
    #[error("format error: {0}")]
    Format(String),
    #[error(transparent)]
    Io(#[from] io::Error),
}
