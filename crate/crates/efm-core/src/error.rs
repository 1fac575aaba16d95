use thiserror::Error;

/// Errors shared across the crate.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EfmError {
    #[error("invalid parameters: {0}")]
    InvalidParameters(String),

    #[error("cell ({0}, {1}) is not a corner of the shape")]
    NotACorner(usize, usize),

    #[error("gamma move not applicable: {0}")]
    MoveNotApplicable(String),

    #[error("gamma move produced an invalid shape: {0}")]
    InvalidResult(String),

    #[error("invalid rectangles: p = {p} exceeds q = {q}; swap the two blocks")]
    InvalidRectangles { p: usize, q: usize },

    #[error("partition has {0} rows but only {1} variables are available")]
    TooManyRows(usize, usize),

    #[error("need at least {needed} variables to expand the product, got {got}")]
    InsufficientVariables { needed: usize, got: usize },

    #[error("kappa2 = 0 with a weight having zeta_n = 0; the gamma action is not determined")]
    DegenerateWeight,

    #[error("modules have different Hecke parameters: {0}")]
    ParamMismatch(String),

    #[error("weight is not reconstructible as a standard tableau: {0}")]
    NotReconstructible(String),

    #[error("weight is not minimal: {0}")]
    NotMinimal(String),

    #[error("weight cannot be normalized to a minimal one: {0}")]
    NotMinimalizable(String),

    #[error("weight violates a structural property: {0}")]
    PropertyViolation(String),

    #[error("recovery case validation failed: {0}")]
    CaseValidationFailed(String),

    #[error("round trip failed: {0}")]
    RoundTripFailed(String),

    #[error("tensor space too large: {0}")]
    OutOfBudget(String),

    #[error("inconsistent oracle parameters: {0}")]
    InconsistentParameters(String),

    #[error("operator maps the invariant subspace outside itself")]
    RestrictionLeak,

    #[error("oracle mismatch: {0}")]
    MismatchReport(String),
}

pub type Result<T> = std::result::Result<T, EfmError>;
