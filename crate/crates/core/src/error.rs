use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("ill-defined homomorphism")]
    IllDefinedHomomorphism,
    #[error("quotient undefined: subgroup is not normal")]
    QuotientUndefined,
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("subgroup is not cyclic")]
    NotCyclic,
    #[error("not a cocycle")]
    NotACocycle,
    #[error("invalid group table: {0}")]
    InvalidGroup(String),
    #[error("invalid multinorm spec: {0}")]
    InvalidSpec(String),
    #[error("no integer solution")]
    NoSolution,
    #[error("parse error: {0}")]
    Parse(String),
    #[error("time budget exceeded")]
    BudgetExceeded,
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
