use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("variable index {index} out of range for {n_vars} variables")]
    VarIndex { index: usize, n_vars: usize },
    #[error("{op} of a jet with zero constant term")]
    ZeroConstant { op: &'static str },
    #[error("root bracketing failed: {0}")]
    NoBracket(String),
    #[error("implicit equation has vanishing derivative at the solution")]
    DegenerateDerivative,
    #[error("metric is singular or not positive definite at the point")]
    SingularMetric,
    #[error("metric jet is not Hermitian (defect {0:.3e})")]
    NotHermitian(f64),
    #[error("metric jets have order {0}, curvature needs at least 2")]
    InsufficientOrder(usize),
    #[error("invalid `{field}`: {reason}")]
    InvalidParam { field: String, reason: String },
    #[error("point outside chart domain: {0}")]
    OutsideChart(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("conformal factor is not real-valued (defect {0:.3e})")]
    NotReal(f64),
    #[error("{failed} of {total} sample points failed to construct")]
    TooManyFailures { failed: usize, total: usize },
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub(crate) fn param(field: impl Into<String>, reason: impl Into<String>) -> Self {
        Error::InvalidParam {
            field: field.into(),
            reason: reason.into(),
        }
    }
}
