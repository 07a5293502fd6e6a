use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("{what} = {value} is outside the domain {domain}")]
    Domain {
        what: &'static str,
        value: f64,
        domain: &'static str,
    },

    #[error("no sign change on [{lo}, {hi}]: f(lo) = {f_lo}, f(hi) = {f_hi}")]
    NoSignChange { lo: f64, hi: f64, f_lo: f64, f_hi: f64 },

    #[error("solver did not converge after {iterations} iterations (bracket width {width:e})")]
    NoConvergence { iterations: usize, width: f64 },

    #[error("objective returned a non-finite value {value} at x = {x}")]
    NonFinite { x: f64, value: f64 },

    #[error("{what}: {needed} exceeds the budget of {budget}")]
    BudgetExceeded {
        what: &'static str,
        needed: f64,
        budget: f64,
    },

    #[error("rate {rate} is within {margin:e} of the branch breakpoint {breakpoint}")]
    BranchBoundary { rate: f64, breakpoint: f64, margin: f64 },

    #[error("invalid parameters: {0}")]
    InvalidParams(String),

    #[error("column length mismatch: {left} vs {right}")]
    LengthMismatch { left: usize, right: usize },

    #[error("column index {index} out of range for a code with {t} columns")]
    IndexOutOfRange { index: usize, t: usize },

    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("internal consistency check failed: {0}")]
    Consistency(String),
}

impl Error {
    pub(crate) fn domain(what: &'static str, value: f64, domain: &'static str) -> Self {
        Error::Domain { what, value, domain }
    }

    /// True for failures of the numerical machinery itself (as opposed to
    /// bad input).
    pub fn is_numeric(&self) -> bool {
        matches!(
            self,
            Error::NoSignChange { .. } | Error::NoConvergence { .. } | Error::NonFinite { .. } | Error::Consistency(_)
        )
    }
}
