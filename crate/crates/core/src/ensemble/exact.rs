use serde::{Deserialize, Serialize};

use super::combinatorics::{ln_binomial_upper_tail, ln_choose};
use super::types::{union_size_pmf_sequential, UnionSizePmf};
use super::EnsembleSpec;
use crate::error::{Error, Result};
use crate::numerics::LogSum;

/// `ln [C(k, w) / C(N, w)]`: the log-probability that a uniform weight-`w`
/// column is covered by a fixed union of size `k`.
pub fn ln_cover_prob(n: usize, w: usize, k: usize) -> Result<f64> {
    if !(w <= k && k <= n) {
        return Err(Error::InvalidParams(format!(
            "cover probability needs w <= k <= N, got w = {w}, k = {k}, N = {n}"
        )));
    }
    Ok(ln_choose(k as u64, w as u64) - ln_choose(n as u64, w as u64))
}

pub fn cover_prob(n: usize, w: usize, k: usize) -> Result<f64> {
    Ok(ln_cover_prob(n, w, k)?.exp())
}

/// Exact ensemble expectation of the bad-subset indicator together with the
/// union upper bound and the matching lower bound, all as natural logs.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BadProbLn {
    pub exact: f64,
    pub union_bound: f64,
    pub lemma_lower: f64,
}

impl BadProbLn {
    pub fn exact(&self) -> f64 {
        self.exact.exp()
    }

    pub fn union_bound(&self) -> f64 {
        self.union_bound.exp()
    }

    pub fn lemma_lower(&self) -> f64 {
        self.lemma_lower.exp()
    }
}

/// Constant `D(s, L) = min(D1, D2, 1/2)` of the lower bound
/// `Pr{bad | k} >= D min{1, C(t-s, L) p_k^L}`, with
/// `D1 = ((1.5^{1/L} - 1) / (s + L + 1))^L / 2` and
/// `D2 = ((1.5^{1/L} - 1) / (s + L))^L`.
///
/// `D2` covers the case `p_k >= (1.5^{1/L} - 1) / (s + L)`, where `L` fixed
/// outside columns are all covered with probability `p_k^L >= D2`.
pub fn lemma1_constant(s: u32, l: u32) -> f64 {
    let lf = l as f64;
    let base = 1.5f64.powf(1.0 / lf) - 1.0;
    let d1 = 0.5 * (base / (s + l + 1) as f64).powf(lf);
    let d2 = (base / (s + l) as f64).powf(lf);
    d1.min(d2).min(0.5)
}

fn check(s: u32, l: u32, spec: &EnsembleSpec) -> Result<()> {
    if s == 0 || l == 0 {
        return Err(Error::InvalidParams("s and L must be at least 1".into()));
    }
    if (s as u64) > spec.t {
        return Err(Error::InvalidParams(format!(
            "code size t = {} is smaller than s = {s}",
            spec.t
        )));
    }
    Ok(())
}

/// Sum over the union size `k` of `p_k` times each conditional quantity.
pub fn bad_prob_ln(s: u32, l: u32, spec: &EnsembleSpec) -> Result<BadProbLn> {
    check(s, l, spec)?;
    let pmf = union_size_pmf_sequential(s, spec.n, spec.w)?;
    bad_prob_ln_from(&pmf, l, spec)
}

pub(crate) fn bad_prob_ln_from(pmf: &UnionSizePmf, l: u32, spec: &EnsembleSpec) -> Result<BadProbLn> {
    let others = spec.t - pmf.s as u64;
    if others < l as u64 {
        return Ok(BadProbLn {
            exact: f64::NEG_INFINITY,
            union_bound: f64::NEG_INFINITY,
            lemma_lower: f64::NEG_INFINITY,
        });
    }
    let ln_tuples = ln_choose(others, l as u64);
    let (mut exact, mut union) = (LogSum::new(), LogSum::new());
    for (i, &ln_pk) in pmf.ln_probs.iter().enumerate() {
        let k = pmf.w + i;
        let ln_cover = ln_cover_prob(spec.n, spec.w, k)?;
        exact.add(ln_pk + ln_binomial_upper_tail(others, ln_cover, l as u64));
        union.add(ln_pk + (ln_tuples + l as f64 * ln_cover).min(0.0));
    }
    let union_bound = union.ln_value();
    Ok(BadProbLn {
        exact: exact.ln_value(),
        union_bound,
        lemma_lower: union_bound + lemma1_constant(pmf.s, l).ln(),
    })
}

/// Probability that a fixed `s`-subset of a random code from the ensemble is
/// `s_L`-bad: `Σ_k p_k P{Bin(t - s, C(k,w)/C(N,w)) >= L}`.
pub fn exact_bad_prob(s: u32, l: u32, spec: &EnsembleSpec) -> Result<f64> {
    Ok(bad_prob_ln(s, l, spec)?.exact())
}

/// `Σ_k p_k min{1, C(t-s, L) p^L}`.
pub fn union_bound_bad_prob(s: u32, l: u32, spec: &EnsembleSpec) -> Result<f64> {
    Ok(bad_prob_ln(s, l, spec)?.union_bound())
}

/// `D(s, L)` times the union bound.
pub fn lemma1_lower_bound(s: u32, l: u32, spec: &EnsembleSpec) -> Result<f64> {
    Ok(bad_prob_ln(s, l, spec)?.lemma_lower())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cover_probabilities() {
        assert!((cover_prob(4, 2, 3).unwrap() - 0.5).abs() < 1e-15);
        assert_eq!(cover_prob(9, 3, 9).unwrap(), 1.0);
        assert!((cover_prob(9, 3, 3).unwrap() - 1.0 / 84.0).abs() < 1e-15);
        assert!(cover_prob(9, 3, 2).is_err());
        assert!(cover_prob(9, 3, 10).is_err());
    }

    #[test]
    fn tiny_instance() {
        let spec = EnsembleSpec::with_weight(4, 3, 2, 0).unwrap();
        let v = exact_bad_prob(2, 1, &spec).unwrap();
        assert!((v - 19.0 / 36.0).abs() < 1e-14);
        // L = 1: a single outside column, so the union bound is exact
        assert!((union_bound_bad_prob(2, 1, &spec).unwrap() - v).abs() < 1e-14);
        assert_eq!(exact_bad_prob(2, 2, &spec).unwrap(), 0.0);
        assert!(exact_bad_prob(4, 1, &spec).is_err());
    }

    #[test]
    fn sandwich() {
        let spec = EnsembleSpec::with_weight(16, 8, 4, 0).unwrap();
        let b = bad_prob_ln(2, 2, &spec).unwrap();
        assert!(b.lemma_lower <= b.exact && b.exact <= b.union_bound);
    }

    #[test]
    fn lemma_constant() {
        let d = lemma1_constant(2, 1);
        assert!((d - 0.5 * 0.5 / 4.0).abs() < 1e-15);
        assert!(lemma1_constant(3, 4) < lemma1_constant(3, 3));
    }
}
