use thiserror::Error;

/// Errors raised by the numeric routines.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("domain error in {func}: {detail}")]
    Domain { func: &'static str, detail: String },

    #[error("range error in {func}: {detail}")]
    Range { func: &'static str, detail: String },

    #[error("invalid parameters: {0}")]
    InvalidParams(String),

    #[error("{func} failed to converge after {iterations} iterations (bracket [{lo:e}, {hi:e}])")]
    Convergence {
        func: &'static str,
        iterations: usize,
        lo: f64,
        hi: f64,
    },
}

impl Error {
    pub(crate) fn domain(func: &'static str, detail: impl Into<String>) -> Self {
        Error::Domain { func, detail: detail.into() }
    }

    pub(crate) fn range(func: &'static str, detail: impl Into<String>) -> Self {
        Error::Range { func, detail: detail.into() }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
