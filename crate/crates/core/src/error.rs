use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("potential entry {index} is not finite")]
    NonFinite { index: usize },
    #[error("last potential entry is zero (b = {b}); trim trailing zeros before validating")]
    TrailingZero { b: usize },
    #[error("z = 0 is not an admissible spectral parameter")]
    ZeroArgument,
    #[error("leading coefficient of the degree-{degree} polynomial is zero")]
    DegenerateDegree { degree: usize },
    #[error("root multiplicities sum to {found}, expected {expected}")]
    CountMismatch { found: usize, expected: usize },
    #[error("nonreal root {re}{im:+}i lies on or inside the unit circle (|z| = {modulus})")]
    UnitCircleViolation { re: f64, im: f64, modulus: f64 },
    #[error("nonreal roots are not closed under conjugation")]
    ConjugateMismatch,
    #[error("zero at position {index} is not a bound state")]
    NotABoundState { index: usize },
    #[error("invalid numeric configuration: {0}")]
    InvalidConfig(String),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("root set is not realizable by a real potential (residual {residual:e})")]
    Inconsistent { residual: f64 },
    #[error("{what} did not converge after {iterations} iterations")]
    NoConvergence {
        what: &'static str,
        iterations: usize,
    },
    #[error("singular Jacobian at iteration {iteration}")]
    SingularJacobian { iteration: usize },
    #[error("eigenvalue computation failed for the companion matrix")]
    EigenFailure,
    #[error("parse error: {0}")]
    Parse(String),
}
