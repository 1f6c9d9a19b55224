use crate::exactalg::Rat;
use thiserror::Error;

/// Errors raised by the algebraic layers and the scenario runner.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("pole at u = {0}")]
    Pole(Rat),
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("singular matrix")]
    SingularMatrix,
    #[error("parameter constraint violated: {0}")]
    ParameterConstraint(String),
    #[error("parity sequence is not standard")]
    NonStandardParity,
    #[error("wrong rank: expected {expected}, got {got}")]
    WrongRank { expected: usize, got: usize },
    #[error("irrational spectrum: {0}")]
    IrrationalSpectrum(String),
    #[error("vector is not highest: {0}")]
    NotHighest(String),
    #[error("reduced subspace is empty")]
    EmptySubspace,
    #[error("well-definedness failure: {0}")]
    WellDefinedness(String),
    #[error("certification grid exhausted: {0}")]
    GridExhausted(String),
    #[error("invalid input: {0}")]
    Input(String),
}

pub type Result<T> = std::result::Result<T, Error>;
