//! Random-coding bounds for almost disjunctive list-decoding codes.
//!
//! * [`numerics`] - binary entropy, KL divergence, bisection and scalar
//!   maximization.
//! * [`bounds`] - rate, capacity and error-exponent bounds obtained from the
//!   constant-weight random ensemble.
//! * [`ensemble`] - exact and Monte Carlo evaluation of that ensemble at
//!   finite length.
//! * [`verifier`] - brute-force checks of explicit codes.

// `!(x > 0.0)` is used on purpose so that NaN lands in the error branch
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod bounds;
pub mod ensemble;
pub mod error;
pub mod numerics;
mod rng;
pub mod verifier;

pub use bounds::{
    BoundResult, Bounds, Branch, CodeParams, CurveSample, ExponentCurve, ExponentPoint, ParametricPoint, Table,
    TableRequest,
};
pub use ensemble::{EnsembleSpec, MonteCarloEstimate, TypeDistribution, UnionSizePmf};
pub use error::{Error, Result};
pub use numerics::Tolerances;
pub use verifier::{BadCountReport, BinaryCode, Column};
