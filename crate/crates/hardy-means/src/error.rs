use thiserror::Error;

/// Error type shared by every module in the crate.
///
/// `Domain` means a concrete input value was outside the mean's domain,
/// `Parameter` means a structural argument (exponent, grid, count) was
/// invalid before any value was touched.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),

    #[error("parameter error: {0}")]
    Parameter(String),

    #[error("sequence exhausted: {0}")]
    Exhausted(String),

    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
