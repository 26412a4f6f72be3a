use thiserror::Error;

/// Errors raised by the library. Negative answers to decision questions
/// (not convex, not continuous, lacks the AFPP) are ordinary return values,
/// never errors.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("point {0} is not in the image")]
    NotInImage(String),
    #[error("sets are not disjoint: {0} lies in both")]
    NotDisjoint(String),
    #[error("input set is empty")]
    Empty,
    #[error("map table is not total: no value for {0}")]
    NotTotal(String),
    #[error("map value {value} of {point} is outside the codomain")]
    OutsideCodomain { point: String, value: String },
    #[error("domain mismatch: {0}")]
    DomainMismatch(String),
    #[error("map is not a self-map of a digital image")]
    NotSelfMap,
    #[error("not a closed curve: {0}")]
    NotClosedCurve(String),
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("no canonical bounding curve: {0}")]
    NoBoundingCurve(String),
    #[error("internal consistency check failed: {0}")]
    Inconsistent(String),
    #[error("parse error on line {line}: {message}")]
    Parse { line: usize, message: String },
}

pub type Result<T> = std::result::Result<T, Error>;
