use thiserror::Error;

/// Error type shared by all workbench modules.
///
/// `Domain` means the inputs violate a mathematical precondition, `Resource`
/// means an enumeration or table would exceed the configured budget, and
/// `Numerical` means a quadrature failed to converge to the requested
/// tolerance.
#[derive(Debug, Error)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),
    #[error("resource error: {0}")]
    Resource(String),
    #[error("numerical error: {0}")]
    Numerical(String),
}

impl Error {
    pub fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }

    pub fn resource(msg: impl Into<String>) -> Self {
        Error::Resource(msg.into())
    }

    pub fn numerical(msg: impl Into<String>) -> Self {
        Error::Numerical(msg.into())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
