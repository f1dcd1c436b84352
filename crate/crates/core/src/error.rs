use thiserror::Error;

use crate::switching::SwitchingViolation;

/// Everything that can go wrong in this crate.
///
/// `InternalConsistency` is reserved for results that contradict a proven
/// property of the construction; seeing it means a bug, not bad input.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("structure error: {0}")]
    Structure(String),

    #[error("infeasible: {0}")]
    Infeasible(String),

    #[error("certification failed: {0}")]
    Certification(String),

    #[error("construction input rejected: {0}")]
    Validation(String),

    #[error("switching partition rejected: {0}")]
    Switching(#[from] SwitchingViolation),

    #[error("quotient too small: {0}")]
    QuotientTooSmall(String),

    #[error("graph6 decode error: {0}")]
    Graph6(String),

    #[error("internal consistency failure: {0}")]
    InternalConsistency(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
