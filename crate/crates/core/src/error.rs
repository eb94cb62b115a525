use thiserror::Error;

use crate::brace::{Chirality, ValidationReport};

/// Errors raised by brace, series, group and solution operations.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BraceError {
    #[error("malformed table: {0}")]
    MalformedTable(String),
    #[error("{0}")]
    Invalid(ValidationReport),
    #[error("operation requires a {expected} brace, got a {found} brace")]
    WrongChirality { expected: Chirality, found: Chirality },
    #[error("summands do not share a chirality")]
    MixedChirality,
    #[error("subsets belong to different braces")]
    DifferentParents,
    #[error("subset is not an ideal: {0}")]
    NotAnIdeal(String),
    #[error("bracket chain does not vanish; closure of generated subbraces is not guaranteed")]
    NotBracketNilpotent,
    #[error("left powers chain does not vanish")]
    NotLeftNilpotent,
    #[error("adjoint group is not nilpotent")]
    AdjointNotNilpotent,
    #[error("element {element} is not in the required chain term (index {index})")]
    MembershipViolation { element: usize, index: usize },
    #[error("element index {0} out of range")]
    ElementOutOfRange(usize),
    #[error("empty list of summands")]
    EmptySum,
    #[error("order {order} exceeds the supported bound {bound}")]
    BoundExceeded { order: usize, bound: usize },
    #[error("induced map is not well defined on class {0}")]
    InducedMapIllDefined(usize),
    #[error("internal consistency failure: {0}")]
    Internal(String),
}

pub type Result<T, E = BraceError> = std::result::Result<T, E>;
