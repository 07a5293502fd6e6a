//! Random-coding lower bounds on the rate, capacity and error exponent of
//! almost disjunctive list-decoding codes built from the constant-weight
//! ensemble.
//!
//! Notation used throughout:
//!
//! * `s` - strength (number of columns whose union is tested),
//! * `l` - list size (number of outside columns that must be covered),
//! * `q_weight` - relative column weight `Q`,
//! * `q` - relative size of the union of `s` columns, `Q <= q <= min(1, sQ)`,
//! * `y` - the parameter linking the two through `q = Q (1 - y^s) / (1 - y)`.
//!
//! Closed-form quantities are free functions. Anything that needs a root
//! finder or a maximizer hangs off [`Bounds`], which carries the solver
//! tolerances.

mod capacity;
mod exponent;
mod list_rate;
mod rate_function;
mod table;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::numerics::Tolerances;

pub use capacity::{capacity_at_q, capacity_at_q_alt};
pub use exponent::{Branch, CurveSample, ExponentCurve, ExponentPoint};
pub use list_rate::rate_rc_limit;
pub use rate_function::{q_of_y, union_fraction_at_optimum};
pub use table::{is_excluded_cell, CapacityRow, CellValues, Table, TableCell, TableRequest};

/// Relative column weights are searched on this interval.
pub const Q_SEARCH_LO: f64 = 1e-6;
pub const Q_SEARCH_HI: f64 = 1.0 - 1e-6;

/// Tolerance on agreement of adjacent branches at an exact breakpoint.
pub const BRANCH_AGREEMENT: f64 = 1e-9;

/// The tuple `(s, L, Q, R)` parameterizing every bound.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CodeParams {
    pub s: u32,
    pub l: u32,
    pub q_weight: f64,
    pub rate: f64,
}

impl CodeParams {
    pub fn new(s: u32, l: u32, q_weight: f64, rate: f64) -> Result<Self> {
        check_sl(s, l)?;
        check_weight(q_weight)?;
        if !(rate >= 0.0 && rate.is_finite()) {
            return Err(Error::domain("R", rate, "[0, inf)"));
        }
        Ok(CodeParams { s, l, q_weight, rate })
    }
}

/// A point `(y, q)` on the curve `q = Q (1 - y^s) / (1 - y)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ParametricPoint {
    pub y: f64,
    pub q: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct Diagnostics {
    pub evaluations: usize,
    pub iterations: usize,
    pub residual: f64,
}

/// Value of an optimized bound plus the optimizer's by-products.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BoundResult {
    pub value: f64,
    /// Inner solution (`y` root or `q`), when one exists.
    pub inner: Option<f64>,
    pub argmax_q: Option<f64>,
    pub diagnostics: Diagnostics,
}

/// Solver front end for every bound that needs root finding or maximization.
#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct Bounds {
    pub tol: Tolerances,
}

impl Bounds {
    pub fn new(tol: Tolerances) -> Self {
        Bounds { tol }
    }
}

pub(crate) fn check_s(s: u32) -> Result<()> {
    if s == 0 {
        return Err(Error::InvalidParams("strength s must be at least 1".into()));
    }
    Ok(())
}

pub(crate) fn check_sl(s: u32, l: u32) -> Result<()> {
    check_s(s)?;
    if l == 0 {
        return Err(Error::InvalidParams("list size L must be at least 1".into()));
    }
    Ok(())
}

pub(crate) fn check_weight(q_weight: f64) -> Result<()> {
    if !(q_weight > 0.0 && q_weight < 1.0) {
        return Err(Error::domain("Q", q_weight, "(0, 1)"));
    }
    Ok(())
}

pub(crate) fn check_rate(rate: f64) -> Result<()> {
    if !(rate >= 0.0 && rate.is_finite()) {
        return Err(Error::domain("R", rate, "[0, inf)"));
    }
    Ok(())
}
