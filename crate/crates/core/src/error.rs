use thiserror::Error;

use crate::group::Elem;

/// Errors raised while building or analysing groups, braces and solutions.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("table is not square or has entries outside [0, {order})")]
    MalformedTable { order: usize },

    #[error("element 0 is not a two-sided identity: 0*{witness} or {witness}*0 != {witness}")]
    NoIdentityAtZero { witness: Elem },

    #[error("table is not a Latin square: {line} {index} repeats element {element}")]
    NotLatinSquare {
        line: &'static str,
        index: usize,
        element: Elem,
    },

    #[error("operation is not associative: ({a}*{b})*{c} != {a}*({b}*{c})")]
    NotAssociative { a: Elem, b: Elem, c: Elem },

    #[error("subset is not a subgroup")]
    NotASubgroup,

    #[error("subgroup is not normal")]
    NotNormal,

    #[error("order {order} exceeds the cap of {cap}")]
    OrderCapExceeded { order: usize, cap: usize },

    #[error("operand orders differ: {left} vs {right}")]
    SizeMismatch { left: usize, right: usize },

    #[error("left distributivity fails at a={a}, b={b}, c={c}")]
    DistributivityFails { a: Elem, b: Elem, c: Elem },

    #[error("subset is not an ideal: {reason}")]
    NotIdeal { reason: &'static str },

    #[error("invalid derivation: {reason} (witness {x}, {y})")]
    InvalidDerivation {
        reason: &'static str,
        x: Elem,
        y: Elem,
    },

    #[error("invalid solution: {0}")]
    InvalidSolution(String),

    #[error("not applicable: {0}")]
    NotApplicable(String),

    #[error("internal invariant violated: {0}")]
    ConstructionInvariantFailed(String),

    #[error("unknown example `{name}`; valid names are: {valid}")]
    UnknownExample { name: String, valid: String },

    #[error("unknown group `{0}`")]
    UnknownGroup(String),

    #[error("{path}: {message}")]
    FileUnreadable { path: String, message: String },

    #[error("line {line}: {message}")]
    MalformedEntry { line: usize, message: String },
}

pub type Result<T> = std::result::Result<T, Error>;
