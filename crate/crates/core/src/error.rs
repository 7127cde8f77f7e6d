use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// An argument lies outside the domain where the quantity is defined.
    #[error("domain error: {0}")]
    Domain(String),
    /// Malformed or inconsistent input data.
    #[error("invalid input: {0}")]
    Input(String),
    /// The requested route does not exist for this input.
    #[error("unsupported: {0}")]
    Unsupported(String),
    /// A caller contract was not met.
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("singular cell-problem system (zero pivot) at omega = {omega}, N = {n}")]
    Singular { omega: f64, n: usize },
    #[error("non-finite particle state at step {step} (particle {particle})")]
    NonFinite { step: usize, particle: usize },
}

impl Error {
    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }

    pub(crate) fn input(msg: impl Into<String>) -> Self {
        Error::Input(msg.into())
    }
}
