use thiserror::Error;

/// Errors raised by the algorithms in this crate.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// An argument lies outside the domain of an operation.
    #[error("domain error: {0}")]
    Domain(String),

    /// A polynomial could not be written in the gamma basis. `row` is the
    /// y-power being extracted when the failure was detected (absent for
    /// univariate extraction), `residual` the leftover polynomial.
    #[error("not gamma-representable{}: residual {residual}", row.map(|j| format!(" at row j = {j}")).unwrap_or_default())]
    NotGammaRepresentable { row: Option<usize>, residual: String },

    /// Input data violates a structural invariant.
    #[error("invalid {what}: {reason}")]
    Invalid { what: &'static str, reason: String },

    /// A Coxeter diagram component is not of finite type.
    #[error("cannot classify component {0}")]
    Classification(String),

    /// Exact arithmetic produced a value that should have been integral.
    #[error("internal error: {0}")]
    Internal(String),
}

impl Error {
    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }

    pub(crate) fn invalid(what: &'static str, reason: impl Into<String>) -> Self {
        Error::Invalid {
            what,
            reason: reason.into(),
        }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
