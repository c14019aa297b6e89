use thiserror::Error;

/// Errors raised by the numerical operations of this crate.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// An argument lies outside the domain of the operation.
    #[error("domain error: {0}")]
    Domain(String),
    /// The evaluation hit a pole or a removable-looking singular point.
    #[error("singularity: {0}")]
    Singularity(String),
    /// A sequence or grid is too short for the requested operation.
    #[error("size error: {0}")]
    Size(String),
    /// A dense solve was refused because the system is too ill-conditioned.
    #[error("ill-conditioned system: condition number {condition:.3e} exceeds {limit:.3e}")]
    Conditioning { condition: f64, limit: f64 },
}

pub type Result<T> = std::result::Result<T, Error>;
