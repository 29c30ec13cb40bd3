use crate::algebra::AlgebraError;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error("unit ideal: the quotient ring is zero")]
    UnitIdeal,
    #[error("{what} has infinite colength")]
    InfiniteColength { what: String },
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("hypothesis failed: {clause}")]
    Hypothesis { clause: String },
    #[error("inconclusive: {0}")]
    Inconclusive(String),
    #[error("degree bound {bound} too small: homology nonzero in degree {last_nonzero}; increase the bound")]
    IncreaseBound { bound: u64, last_nonzero: u64 },
    #[error("parse error: {0}")]
    Parse(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
}

impl Error {
    pub fn precondition(msg: impl Into<String>) -> Self {
        Error::Precondition(msg.into())
    }

    pub fn parse(msg: impl Into<String>) -> Self {
        Error::Parse(msg.into())
    }
}
