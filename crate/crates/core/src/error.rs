use thiserror::Error;

/// Errors raised by the solver library.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("numeric domain error: {0}")]
    NumericDomain(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("argument out of domain: {0}")]
    OutOfDomain(String),

    #[error("non-finite state detected after step {step}")]
    Divergence { step: usize },

    /// The soliton has not decayed at the domain boundary, so the periodic
    /// truncation is not faithful to the whole-line solution.
    #[error("soliton magnitude {magnitude:e} at the boundary exceeds 1e-12")]
    BoundaryDecay { magnitude: f64 },

    #[error("invalid config: {0}")]
    Config(String),

    #[error("i/o error: {0}")]
    Io(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl From<std::io::Error> for Error {
    fn from(err: std::io::Error) -> Self {
        Error::Io(err.to_string())
    }
}
