use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

/// Every failure the evaluators can report.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),
    #[error("convergence error: {0}")]
    Convergence(String),
    #[error("pole error: {0}")]
    Pole(String),
    #[error("boundary error: {0}")]
    Boundary(String),
    #[error("radius error: {0}")]
    Radius(String),
    #[error("range error: {0}")]
    Range(String),
    #[error("capacity error: {0}")]
    Capacity(String),
    #[error("not a pole: {0}")]
    NotAPole(String),
    #[error("invalid configuration: {0}")]
    Config(String),
}

impl Error {
    /// Stable machine-readable name, used in CLI output.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::Domain(_) => "DomainError",
            Error::Convergence(_) => "ConvergenceError",
            Error::Pole(_) => "PoleError",
            Error::Boundary(_) => "BoundaryError",
            Error::Radius(_) => "RadiusError",
            Error::Range(_) => "RangeError",
            Error::Capacity(_) => "CapacityError",
            Error::NotAPole(_) => "NotAPoleError",
            Error::Config(_) => "ConfigError",
        }
    }
}
