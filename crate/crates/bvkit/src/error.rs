use std::fmt;

/// Errors reported by the toolkit.
///
/// `Domain` means a numeric input left the mathematical domain of an
/// operation (e.g. evaluating outside a function's interval, a negative
/// offset for a modulus). `Argument` means a structurally invalid input
/// (wrong ordering, empty data, parameters outside their admissible range).
#[derive(Debug, Clone, PartialEq)]
pub enum Error {
    Domain(String),
    Argument(String),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::Domain(msg) => write!(f, "domain error: {msg}"),
            Error::Argument(msg) => write!(f, "argument error: {msg}"),
        }
    }
}

impl std::error::Error for Error {}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn domain_err<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Domain(msg.into()))
}

pub(crate) fn argument_err<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Argument(msg.into()))
}
