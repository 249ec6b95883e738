use thiserror::Error;

/// Errors raised by the engine.
///
/// `InvalidInput`, `NotContained`, `Hypotheses`, `NonInvertible` and
/// `OutsideEnvelope` describe problems with what the caller asked for.
/// `Invariant` means an internal cross-check disagreed and always indicates a
/// bug (or a parameter the theory does not cover).
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("lattice inclusion fails: {0}")]
    NotContained(String),
    #[error("hypotheses not satisfied: {0}")]
    Hypotheses(String),
    #[error("non-invertible specialization: {0}")]
    NonInvertible(String),
    #[error("parameter outside the supported envelope: {0}")]
    OutsideEnvelope(String),
    #[error("internal invariant violated: {0}")]
    Invariant(String),
}

impl Error {
    /// True for failures of internal consistency checks.
    pub fn is_invariant_violation(&self) -> bool {
        matches!(self, Error::Invariant(_))
    }
}

pub type Result<T> = std::result::Result<T, Error>;
