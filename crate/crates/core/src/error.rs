use thiserror::Error;

use crate::width::SimpleFactorId;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("degree mismatch: {left} vs {right}")]
    DegreeMismatch { left: usize, right: usize },

    #[error("invalid permutation: {0}")]
    InvalidPermutation(String),

    #[error("parse error at byte {offset}: {message}")]
    Parse { offset: usize, message: String },

    #[error("parameter out of range at byte {offset}: {message}")]
    OutOfRange { offset: usize, message: String },

    #[error("degree {degree} exceeds the configured cap of {cap} points")]
    DegreeCap { degree: String, cap: usize },

    #[error("element is not in the group")]
    NotInGroup,

    #[error("group is not transitive")]
    Intransitive,

    #[error("operation requires a nontrivial group")]
    TrivialGroup,

    #[error("subgroup is not normal")]
    NotNormal,

    #[error("quotient of index {index} exceeds the coset-action cap {cap} and no smaller action is available")]
    QuotientCap { index: String, cap: u64 },

    #[error("group of order {order} is not simple")]
    NotSimple { order: String },

    #[error("group order {order} exceeds the bound {bound}")]
    BoundExceeded { order: String, bound: u64 },

    #[error("malformed subgroup chain: {0}")]
    MalformedChain(String),

    #[error("composition series incomplete after {} factor(s): {source}", partial.len())]
    SeriesIncomplete { partial: Vec<SimpleFactorId>, source: Box<Error> },

    #[error("prime {prime} divides the leading coefficient")]
    BadReduction { prime: u64 },

    #[error("polynomial is zero or constant")]
    DegenerateInput,

    #[error("polynomial is not squarefree over the rationals (repeated factor {repeated})")]
    NotSquarefree { repeated: String },

    #[error("polynomial is reducible: {}", factors.join(" * "))]
    Reducible { factors: Vec<String> },

    #[error("discriminant with respect to y vanishes identically")]
    ZeroDiscriminant,

    #[error("{count} branch points exceed the configured maximum {max}")]
    TooManyBranchPoints { count: usize, max: usize },

    #[error("path tracking failed{}: {message}", branch_point.map(|b| format!(" around branch point #{b}")).unwrap_or_default())]
    Tracking { branch_point: Option<usize>, message: String, history: Vec<String> },

    #[error("internal consistency check failed: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;
