use thiserror::Error;

#[derive(Debug, Error)]
pub enum CoxError {
    #[error("invalid group document: {0}")]
    Parse(String),
    #[error("invalid Coxeter matrix: {0}")]
    InvalidMatrix(String),
    #[error("unknown generator `{0}`")]
    UnknownGenerator(String),
    #[error("elements belong to different Coxeter systems")]
    MixedSystems,
    #[error("lower interval exceeds the cap of {cap} members")]
    IntervalCap { cap: usize },
    #[error("enumeration frontier exceeds the cap of {cap} elements")]
    FrontierCap { cap: usize },
    #[error("word of length {len} exceeds the bound {bound}")]
    BoundExceeded { len: usize, bound: usize },
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("invalid parameter: {0}")]
    Parameter(String),
    #[error("series error: {0}")]
    Series(String),
    /// A structural statement about Tri-avoiding groups failed to hold.
    #[error("theorem violation: {0}")]
    TheoremViolation(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl CoxError {
    pub fn is_theorem_violation(&self) -> bool {
        matches!(self, CoxError::TheoremViolation(_))
    }
}

pub type Result<T> = std::result::Result<T, CoxError>;
