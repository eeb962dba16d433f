use thiserror::Error;

use crate::pointset::Violation;

#[derive(Debug, Error)]
pub enum Error {
    #[error("line through two identical points")]
    IdenticalPoints,
    #[error("degenerate input: {0}")]
    DegenerateInput(String),
    #[error("not an observation point: {0}")]
    NotObservationPoint(String),
    #[error("observation point is not strictly inside the convex hull")]
    NotInteriorPoint,
    #[error("empty sequence")]
    EmptySequence,
    #[error("point set has no colors")]
    UncoloredSet,
    #[error("circular orders are over different index sets")]
    MismatchedIndexSets,
    #[error("need at least 3 points, got {0}")]
    TooFewPoints(usize),
    #[error("point set is not in strong general position: {0}")]
    NotValidated(Violation),
    #[error("invalid point set: {0}")]
    InvalidPointSet(String),
    #[error("retry budget exhausted: {0}")]
    RetryExhausted(String),
    #[error("parameters degenerated: {0}")]
    ParameterDegenerate(String),
    #[error("projected face count {projected} exceeds budget {budget}")]
    BudgetExceeded { projected: u128, budget: u128 },
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
