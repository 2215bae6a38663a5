use thiserror::Error;

/// Errors raised while evaluating, optimizing or verifying a bound.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum BoundError {
    #[error("invalid {field}: {reason}")]
    InvalidInput { field: &'static str, reason: String },

    #[error("{theorem} is only defined for k = 1 (got k = {k})")]
    RequiresK1 { theorem: &'static str, k: u64 },

    #[error("{theorem} requires a VC-dimension complexity")]
    RequiresVcDim { theorem: &'static str },

    #[error("no chaining level certifies a bound (levels tried: {tried:?})")]
    NoCertifiedLevel { tried: Vec<u32> },

    #[error("{0} does not take an alpha parameter")]
    NoAlphaParameter(&'static str),

    #[error("every parameter value in the sweep failed; last error: {0}")]
    SweepFailed(Box<BoundError>),

    #[error("empty parameter range")]
    EmptyRange,

    #[error("unsupported verification setup: {0}")]
    Unsupported(String),
}

impl BoundError {
    pub(crate) fn invalid(field: &'static str, reason: impl Into<String>) -> Self {
        BoundError::InvalidInput {
            field,
            reason: reason.into(),
        }
    }
}

pub type Result<T, E = BoundError> = std::result::Result<T, E>;
