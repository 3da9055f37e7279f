use thiserror::Error;

/// Errors raised by the analyses.
///
/// Variants split into two families: precondition failures (bad or
/// unsupported input) and internal consistency failures, where two
/// independent computations disagree or an audited invariant breaks.
/// [`Error::is_internal`] tells them apart.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("matrix is not symmetric: entry ({row}, {col}) differs from ({col}, {row})")]
    NotSymmetric { row: usize, col: usize },

    #[error("dimension mismatch: {0}")]
    Dimension(String),

    #[error("polynomial is identically zero")]
    ZeroPolynomial,

    #[error("degenerate pencil: every member is singular")]
    DegeneratePencil,

    #[error("singular variety: {0}")]
    SingularVariety(String),

    #[error("singular curve: {0}")]
    SingularCurve(String),

    #[error("not a complete intersection: {0}")]
    NotCompleteIntersection(String),

    #[error("characteristic 2 is not supported")]
    CharacteristicTwo,

    #[error("invalid field: {0}")]
    InvalidField(String),

    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("search space too large: {0}")]
    SizeGuard(String),

    #[error("no solution: {0}")]
    NotFound(String),

    #[error("internal consistency failure: {0}")]
    Internal(String),
}

impl Error {
    /// True for failures of an internal audit rather than of the input.
    pub fn is_internal(&self) -> bool {
        matches!(self, Error::Internal(_))
    }
}

pub type Result<T> = std::result::Result<T, Error>;
