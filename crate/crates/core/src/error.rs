use thiserror::Error;

use crate::monotonicity::CycleWitness;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("invalid input: {0}")]
    Invalid(String),

    #[error("empty input: {0}")]
    Empty(&'static str),

    #[error("linear program failed: {0}")]
    Lp(String),

    #[error("point lies outside the effective domain")]
    OutsideDomain,

    #[error("lattice mismatch: {0}")]
    LatticeMismatch(String),

    #[error("enumeration cap exceeded: {0}")]
    CapExceeded(String),

    #[error("graph is not cyclically monotone (cycle {:?}, sum {})", .0.indices, .0.cycle_sum)]
    PositiveCycle(CycleWitness),

    #[error("unsupported: {0}")]
    Unsupported(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl Error {
    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        Error::Invalid(msg.into())
    }
}

pub(crate) fn check_dim(expected: usize, found: usize) -> Result<()> {
    if expected == found {
        Ok(())
    } else {
        Err(Error::DimensionMismatch { expected, found })
    }
}
