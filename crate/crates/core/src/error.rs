use thiserror::Error;

use crate::types::EvalResult;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    /// An argument lies outside the domain of the operation.
    #[error("domain error: {0}")]
    Domain(String),

    #[error("division by zero")]
    DivisionByZero,

    /// The computation ran out of budget. The partial result is attached.
    #[error("not converged after {effort}: value {value:e}, error estimate {abs_error_estimate:e}", value = .0.value, abs_error_estimate = .0.abs_error_estimate, effort = .0.effort)]
    NotConverged(EvalResult<f64>),

    /// Evaluating one term of a relation failed.
    #[error("term {index}: {source}")]
    Term {
        index: usize,
        #[source]
        source: Box<Error>,
    },

    #[error("parse error: {0}")]
    Parse(String),
}

impl Error {
    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }
}
