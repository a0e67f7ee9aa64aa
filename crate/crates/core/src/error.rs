use thiserror::Error;

/// Errors produced by the numerical kernels, the channel model and the
/// reporting layer.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    /// An argument lies outside the mathematical domain of the operation.
    #[error("domain error: {0}")]
    Domain(String),

    /// An iterative method failed to reach its tolerance.
    #[error("{what} did not converge after {iterations} iterations")]
    Convergence {
        what: &'static str,
        iterations: usize,
    },

    /// A quantity could not be evaluated to the required relative precision.
    #[error("precision loss: {0}")]
    PrecisionLoss(String),

    /// A request exceeds a configured resource limit.
    #[error("resource limit exceeded: {0}")]
    Resource(String),

    /// Malformed configuration or command input.
    #[error("invalid input: {0}")]
    Parse(String),

    #[error("i/o error: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn domain<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Domain(msg.into()))
}
