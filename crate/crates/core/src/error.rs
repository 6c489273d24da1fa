use thiserror::Error;

use crate::exactalg::Ring;

#[derive(Debug, Error)]
pub enum Error {
    #[error("{op} is not supported over {ring}")]
    UnsupportedRing { op: &'static str, ring: Ring },
    #[error("{0} is not a prime")]
    NotPrime(u64),
    #[error("ring mismatch: {0} vs {1}")]
    RingMismatch(Ring, Ring),
    #[error("shape mismatch: {0}")]
    Shape(String),
    #[error("d∘d ≠ 0 at degree {0}")]
    NotAComplex(i32),
    #[error("map does not commute with differentials at degree {0}")]
    NotAChainMap(i32),
    #[error("invalid group action: {0}")]
    InvalidAction(String),
    #[error("invalid tree: {0}")]
    InvalidTree(String),
    #[error("invalid marking: {0}")]
    InvalidMarking(String),
    #[error("unknown operad {0:?}")]
    UnknownOperad(String),
    #[error("invalid symmetric collection: {0}")]
    InvalidCollection(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
