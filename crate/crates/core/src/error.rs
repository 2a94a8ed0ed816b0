use thiserror::Error;

/// Everything that can go wrong while evaluating partition functions,
/// running proof checks or solving Bethe equations.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("matrix dimension {dim} exceeds the limit of {max}")]
    DimensionTooLarge { dim: usize, max: usize },

    #[error("non-finite value encountered: {0}")]
    NonFiniteEntry(String),

    #[error("pole at evaluation point: {0}")]
    PoleAtEvaluationPoint(String),

    #[error("need derivatives up to order {needed}, table only has order {available}")]
    InsufficientDerivatives { needed: usize, available: usize },

    #[error("cardinality mismatch: expected {expected}, found {found}")]
    CardinalityMismatch { expected: usize, found: usize },

    #[error("inhomogeneities {i} and {j} coincide")]
    DegenerateEpsilons { i: usize, j: usize },

    #[error("instance size {size} exceeds the cost guard of {max}")]
    CostGuard { size: usize, max: usize },

    #[error("no convergence (reached g = {g_reached}): {detail}")]
    NoConvergence { g_reached: String, detail: String },

    #[error("invalid input: {0}")]
    InvalidInput(String),
}

impl Error {
    /// Stable machine-readable name of the variant.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::DimensionTooLarge { .. } => "DimensionTooLarge",
            Error::NonFiniteEntry(_) => "NonFiniteEntry",
            Error::PoleAtEvaluationPoint(_) => "PoleAtEvaluationPoint",
            Error::InsufficientDerivatives { .. } => "InsufficientDerivatives",
            Error::CardinalityMismatch { .. } => "CardinalityMismatch",
            Error::DegenerateEpsilons { .. } => "DegenerateEpsilons",
            Error::CostGuard { .. } => "CostGuard",
            Error::NoConvergence { .. } => "NoConvergence",
            Error::InvalidInput(_) => "InvalidInput",
        }
    }

    /// True for failures of floating-point numerics rather than of the input.
    pub fn is_numerical(&self) -> bool {
        matches!(self, Error::NoConvergence { .. } | Error::NonFiniteEntry(_))
    }
}

pub type Result<T> = std::result::Result<T, Error>;
