//! The constant-weight ensemble `{N, t, Q}` at finite length: `t` columns
//! drawn independently and uniformly from the `C(N, w)` columns of weight
//! `w = ⌊QN⌋`.
//!
//! Exact quantities condition on the size `k` of the union of the `s` tested
//! columns. Given the union, the other `t - s` columns are covered
//! independently with probability `C(k, w) / C(N, w)`, so "at least `L` of
//! them are covered" has an exact binomial tail.

mod combinatorics;
mod empirical;
mod exact;
mod monte_carlo;
mod types;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub use combinatorics::{ln_binomial_upper_tail, ln_choose, ln_factorial};
pub use empirical::{code_size, empirical_exponent, EmpiricalExponent, EmpiricalPoint, SizeRounding};
pub use exact::{
    bad_prob_ln, cover_prob, exact_bad_prob, lemma1_constant, lemma1_lower_bound, ln_cover_prob, union_bound_bad_prob,
    BadProbLn,
};
pub use monte_carlo::{monte_carlo_bad_prob, sample_code, MonteCarloEstimate};
pub use types::{
    default_max_length, enumerate_types, for_each_type, union_size_pmf, union_size_pmf_sequential,
    union_size_pmf_with_max_length, TypeDistribution, UnionSizePmf, DEFAULT_MAX_TYPES, MAX_ENUMERATION_S,
};

/// Slack added before flooring `Q N`, so that e.g. `0.29 * 100` gives 29.
pub const WEIGHT_FLOOR_SLACK: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EnsembleSpec {
    /// Code length (rows).
    pub n: usize,
    /// Code size (columns).
    pub t: u64,
    pub q_weight: f64,
    /// Column weight `⌊QN⌋`.
    pub w: usize,
    pub seed: u64,
}

impl EnsembleSpec {
    /// Ensemble with weight `w = ⌊QN⌋`; rejects `w ∈ {0, N}`.
    pub fn new(n: usize, t: u64, q_weight: f64, seed: u64) -> Result<Self> {
        if !(q_weight > 0.0 && q_weight < 1.0) {
            return Err(Error::domain("Q", q_weight, "(0, 1)"));
        }
        let w = (q_weight * n as f64 + WEIGHT_FLOOR_SLACK).floor() as usize;
        let mut spec = EnsembleSpec::with_weight(n, t, w, seed)?;
        spec.q_weight = q_weight;
        Ok(spec)
    }

    /// Ensemble with an explicit weight; `Q` is recorded as `w / N`.
    pub fn with_weight(n: usize, t: u64, w: usize, seed: u64) -> Result<Self> {
        if n == 0 || t == 0 {
            return Err(Error::InvalidParams("N and t must be positive".into()));
        }
        if w == 0 || w >= n {
            return Err(Error::InvalidParams(format!(
                "column weight w = {w} must satisfy 1 <= w <= N - 1 = {}",
                n - 1
            )));
        }
        Ok(EnsembleSpec {
            n,
            t,
            q_weight: w as f64 / n as f64,
            w,
            seed,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn weights() {
        assert_eq!(EnsembleSpec::new(100, 5, 0.29, 0).unwrap().w, 29);
        assert_eq!(EnsembleSpec::new(40, 5, 0.26047, 0).unwrap().w, 10);
        assert!(EnsembleSpec::new(10, 5, 0.05, 0).is_err());
        assert!(EnsembleSpec::with_weight(10, 5, 10, 0).is_err());
        assert!(EnsembleSpec::new(10, 5, 1.0, 0).is_err());
        let s = EnsembleSpec::with_weight(16, 8, 4, 3).unwrap();
        assert_eq!(s.q_weight, 0.25);
    }
}
