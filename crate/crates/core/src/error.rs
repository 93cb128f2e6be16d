use thiserror::Error;

pub type Result<T> = std::result::Result<T, AlgebraError>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AlgebraError {
    #[error("ambient variable counts differ: {left} vs {right}")]
    AmbientMismatch { left: usize, right: usize },
    #[error("expected {expected} entries, found {found}")]
    LengthMismatch { expected: usize, found: usize },
    #[error("variable index {index} out of range for {nvars} variables")]
    IndexOutOfRange { index: usize, nvars: usize },
    #[error("polynomial rings need at least one variable")]
    NoVariables,
    #[error("zero denominator")]
    ZeroDenominator,
    #[error("division by zero")]
    DivisionByZero,
    #[error("Jacobian determinant {0} is not a nonzero constant")]
    NonConstantJacobian(String),
    #[error("no inverse of total degree <= {degree_bound} exists (indeterminate within bound)")]
    InverseNotFound { degree_bound: u32 },
    #[error("supplied inverse does not compose to the identity")]
    InverseMismatch,
    #[error("not a sigma-derivation: pair ({i}, {j}) violates d_i*(s_j - z_j) = d_j*(s_i - z_i)")]
    InconsistentDerivation { i: usize, j: usize },
    #[error("sigma is the identity (differential case)")]
    DifferentialCase,
    #[error("sigma is not the identity")]
    NotDifferential,
    #[error("the {requested} lifting requires {requirement}")]
    WrongCase {
        requested: &'static str,
        requirement: &'static str,
    },
    #[error("degree mismatch: expected {expected}, found {found}")]
    DegreeMismatch { expected: usize, found: usize },
    #[error("{0} is outside the stated eigenspace")]
    NotInEigenspace(String),
    #[error("index k = {k} out of range 0..={r}")]
    SymmetricRange { k: usize, r: usize },
    #[error("internal invariant violated: {0}")]
    Internal(String),
}
