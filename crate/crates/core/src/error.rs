use thiserror::Error;

use crate::groupoid::{FunctorViolation, ValidationReport};

/// Everything that can go wrong in this crate.
///
/// Structural problems (unknown or duplicated identifiers) are kept apart from
/// axiom failures so that callers can tell malformed input from a well-formed
/// table that simply is not a groupoid.
#[derive(Debug, Error)]
pub enum Error {
    #[error("malformed input: {0}")]
    Structural(String),

    #[error("groupoid axioms violated: {0}")]
    Axioms(ValidationReport),

    #[error("functor laws violated: {}", join(.0))]
    FunctorLaws(Vec<FunctorViolation>),

    #[error("not a group: {0}")]
    NotAGroup(String),

    #[error("unknown object `{0}`")]
    UnknownObject(String),

    #[error("not a cofibration: {0}")]
    NotACofibration(String),

    #[error("not an equivalence: {0}")]
    NotAnEquivalence(String),

    #[error("invalid presentation: {0}")]
    InvalidPresentation(String),

    #[error("concretization bound must be positive")]
    InvalidBound,

    #[error("resolution failure, decrease tol or reseed: {0}")]
    Resolution(String),

    #[error("K0 multiplicity {value} is not within 0.01 of an integer")]
    Rounding { value: f64 },

    #[error("size bound exceeded: {0}")]
    SizeBound(String),

    #[error("combinatorial budget exceeded: estimated {estimate} simplices, budget {budget}")]
    Budget { estimate: u128, budget: u128 },

    #[error("{0}")]
    Precondition(String),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

fn join(v: &[FunctorViolation]) -> String {
    v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join("; ")
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
