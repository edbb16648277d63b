use thiserror::Error;

use crate::indexset::IndexSet;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("dimension {dim} exceeds the enumeration cap {cap}")]
    DimensionTooLarge { dim: usize, cap: usize },

    #[error("search space of {required} candidates exceeds the budget {budget}")]
    SearchSpaceTooLarge { required: u128, budget: u128 },

    #[error("target is not in the convex hull of the points")]
    NotInHull,

    #[error("{0} is not an irreducible component of the nullcone")]
    NotNullconeComponent(IndexSet),

    #[error("generator {index} ({vector:?}) is not an invariant exponent vector")]
    GeneratorNotInvariant { index: usize, vector: Vec<u64> },

    #[error("arithmetic overflow in machine-word exponent arithmetic")]
    Overflow,

    /// A property guaranteed by theory failed to hold; this is a bug.
    #[error("invariant violation: {0}")]
    InvariantViolation(String),
}

impl Error {
    /// Resource caps (dimension, search budget) as opposed to malformed input.
    pub fn is_resource_cap(&self) -> bool {
        matches!(
            self,
            Error::DimensionTooLarge { .. } | Error::SearchSpaceTooLarge { .. }
        )
    }

    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidInput(msg.into())
    }
}
