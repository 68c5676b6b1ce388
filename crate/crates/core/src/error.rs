use thiserror::Error;

/// Errors raised by the calculus. Every variant carries enough context to
/// reproduce the failure from the offending input.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("malformed input: {0}")]
    Malformed(String),

    #[error("assignment is not simplicial: image of simplex {simplex} is not a simplex of the target")]
    NotSimplicial { simplex: String },

    #[error("invalid group action: {0}")]
    InvalidAction(String),

    #[error("action is not regular (simplex {simplex} is stabilized but not fixed vertexwise); subdivide first")]
    NonRegular { simplex: String },

    #[error("function is not invariant under the action: {0}")]
    NonInvariant(String),

    #[error("ring mismatch: {0}")]
    RingMismatch(String),

    #[error("simplex {simplex} carries both a positive and a negative sign; subdivide first")]
    MixedSigns { simplex: String },

    #[error("fan is invalid: {0}")]
    InvalidFan(String),

    #[error("transform is not constant on cone {cone}; refine the target fan")]
    RefinementNeeded { cone: String },

    #[error("unsupported: {0}")]
    Unsupported(String),

    #[error("invalid root datum: {0}")]
    InvalidRootDatum(String),

    #[error("weight {0} is not dominant")]
    NotDominant(String),

    #[error("not an isometry: {0}")]
    NotIsometry(String),

    #[error("internal consistency check failed: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;
