//! Row-pattern types of `s` columns and the union-size distribution.

use serde::{Deserialize, Serialize};

use super::combinatorics::{ln_choose, ln_factorial};
use crate::error::{Error, Result};
use crate::numerics::LogSum;

/// Largest `s` for which types are enumerated.
pub const MAX_ENUMERATION_S: u32 = 5;

/// Largest number of types [`union_size_pmf`] will visit.
pub const DEFAULT_MAX_TYPES: u64 = 50_000_000;

/// Largest `N` accepted by [`union_size_pmf`] for a given `s`.
pub fn default_max_length(s: u32) -> usize {
    if s <= 3 {
        400
    } else {
        80
    }
}

/// Counts `n(a)` of each row pattern `a ∈ {0,1}^s` among `N` rows.
///
/// `counts[a]` is indexed by the integer whose bit `i` is the entry of
/// column `i`, so `counts[0]` counts the all-zero rows.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct TypeDistribution {
    pub s: u32,
    pub n: usize,
    pub counts: Vec<usize>,
}

impl TypeDistribution {
    /// Relative frequency `τ(a) = n(a) / N`.
    pub fn tau(&self, a: usize) -> f64 {
        self.counts[a] as f64 / self.n as f64
    }

    /// Number of rows covered by at least one column.
    pub fn union_size(&self) -> usize {
        self.n - self.counts[0]
    }

    /// Weight of column `i`: rows whose pattern has bit `i` set.
    pub fn marginal(&self, i: u32) -> usize {
        self.counts
            .iter()
            .enumerate()
            .filter(|(a, _)| a >> i & 1 == 1)
            .map(|(_, &c)| c)
            .sum()
    }

    /// `ln (N! / Π_a n(a)!)`, the number of row arrangements with this type.
    pub fn ln_multinomial(&self) -> f64 {
        ln_factorial(self.n as u64) - self.counts.iter().map(|&c| ln_factorial(c as u64)).sum::<f64>()
    }
}

fn check_enumeration(s: u32, n: usize, w: usize) -> Result<()> {
    if s == 0 || s > MAX_ENUMERATION_S {
        return Err(Error::InvalidParams(format!(
            "type enumeration needs 1 <= s <= {MAX_ENUMERATION_S}, got {s}"
        )));
    }
    if w > n {
        return Err(Error::InvalidParams(format!("weight {w} exceeds length {n}")));
    }
    Ok(())
}

/// Calls `visit` for every type with `n(0) = N - k` and every column weight
/// equal to `w`.
///
/// Order: lexicographic in `(n(2^s - 1), n(2^s - 2), ..., n(1))`.
pub fn for_each_type<F>(s: u32, n: usize, w: usize, k: usize, mut visit: F) -> Result<()>
where
    F: FnMut(&TypeDistribution),
{
    check_enumeration(s, n, w)?;
    if k > n {
        return Err(Error::InvalidParams(format!("union size {k} exceeds length {n}")));
    }
    walk_types(s, n, w, u64::MAX, |t| {
        if t.union_size() == k {
            visit(t)
        }
    })
}

/// Visits every type with all column weights `w` (any union size) and
/// returns how many were visited.
///
/// Patterns with two or more ones are assigned freely, from the all-ones
/// pattern down; each singleton pattern then takes whatever weight its column
/// still lacks, so every branch ends in a valid type unless the union would
/// exceed `N`.
fn walk_types<F>(s: u32, n: usize, w: usize, max_types: u64, mut visit: F) -> Result<()>
where
    F: FnMut(&TypeDistribution),
{
    let mut walk = TypeWalk {
        ty: TypeDistribution {
            s,
            n,
            counts: vec![0; 1 << s],
        },
        remaining: vec![w; s as usize],
        visited: 0,
        max_types,
    };
    walk.fill((1 << s) - 1, 0, &mut visit);
    if walk.visited > max_types {
        return Err(Error::BudgetExceeded {
            what: "types to enumerate",
            needed: walk.visited as f64,
            budget: max_types as f64,
        });
    }
    Ok(())
}

struct TypeWalk {
    ty: TypeDistribution,
    remaining: Vec<usize>,
    visited: u64,
    max_types: u64,
}

impl TypeWalk {
    /// `rows` counts nonzero rows assigned so far.
    fn fill<F: FnMut(&TypeDistribution)>(&mut self, a: usize, rows: usize, visit: &mut F) {
        if self.visited > self.max_types {
            return;
        }
        if a == 0 {
            let k = rows + self.remaining.iter().sum::<usize>();
            if k > self.ty.n {
                return;
            }
            for (i, &r) in self.remaining.iter().enumerate() {
                self.ty.counts[1 << i] = r;
            }
            self.ty.counts[0] = self.ty.n - k;
            self.visited += 1;
            visit(&self.ty);
            return;
        }
        if a.is_power_of_two() {
            return self.fill(a - 1, rows, visit);
        }
        let s = self.remaining.len();
        let bits = move |a: usize| (0..s).filter(move |&i| a >> i & 1 == 1);
        let cap = bits(a).map(|i| self.remaining[i]).min().unwrap_or(0);
        for c in 0..=cap {
            if c > 0 {
                for i in bits(a) {
                    self.remaining[i] -= 1;
                }
            }
            self.ty.counts[a] = c;
            self.fill(a - 1, rows + c, visit);
        }
        for i in bits(a) {
            self.remaining[i] += cap;
        }
        self.ty.counts[a] = 0;
    }
}

/// Every type with union size `k`, in the order of [`for_each_type`].
pub fn enumerate_types(s: u32, n: usize, w: usize, k: usize) -> Result<Vec<TypeDistribution>> {
    let mut out = Vec::new();
    for_each_type(s, n, w, k, |t| out.push(t.clone()))?;
    Ok(out)
}

/// Distribution of `|x(1) ∨ ... ∨ x(s)|` for `s` independent uniform
/// columns of length `N` and weight `w`, on `k ∈ [w, min(N, s w)]`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct UnionSizePmf {
    pub s: u32,
    pub n: usize,
    pub w: usize,
    /// `ln p_k` for `k = k_min() ..= k_max()`.
    pub ln_probs: Vec<f64>,
}

impl UnionSizePmf {
    pub fn k_min(&self) -> usize {
        self.w
    }

    pub fn k_max(&self) -> usize {
        self.w + self.ln_probs.len() - 1
    }

    pub fn ln_p(&self, k: usize) -> f64 {
        if k < self.k_min() || k > self.k_max() {
            f64::NEG_INFINITY
        } else {
            self.ln_probs[k - self.w]
        }
    }

    pub fn p(&self, k: usize) -> f64 {
        self.ln_p(k).exp()
    }

    /// `(k, p_k)` pairs over the support.
    pub fn iter(&self) -> impl Iterator<Item = (usize, f64)> + '_ {
        self.ln_probs.iter().enumerate().map(|(i, lp)| (self.w + i, lp.exp()))
    }

    pub fn total(&self) -> f64 {
        self.iter().map(|(_, p)| p).sum()
    }

    fn checked(self) -> Result<Self> {
        let total = self.total();
        if (total - 1.0).abs() > 1e-12 {
            return Err(Error::Consistency(format!("union-size probabilities sum to {total}")));
        }
        Ok(self)
    }
}

fn support_max(s: u32, n: usize, w: usize) -> usize {
    n.min(s as usize * w)
}

/// Union-size distribution from the type sum
/// `p_k = C(N, w)^{-s} Σ N! / Π n(a)!` over all types with union size `k`.
pub fn union_size_pmf(s: u32, n: usize, w: usize) -> Result<UnionSizePmf> {
    union_size_pmf_with_max_length(s, n, w, default_max_length(s))
}

pub fn union_size_pmf_with_max_length(s: u32, n: usize, w: usize, max_length: usize) -> Result<UnionSizePmf> {
    check_enumeration(s, n, w)?;
    if n > max_length {
        return Err(Error::BudgetExceeded {
            what: "code length for type enumeration",
            needed: n as f64,
            budget: max_length as f64,
        });
    }
    let ln_fact: Vec<f64> = (0..=n as u64).map(ln_factorial).collect();
    let ln_norm = s as f64 * ln_choose(n as u64, w as u64);
    let mut sums: Vec<LogSum> = (w..=support_max(s, n, w)).map(|_| LogSum::new()).collect();
    walk_types(s, n, w, DEFAULT_MAX_TYPES, |t| {
        let ln_mult = ln_fact[n] - t.counts.iter().map(|&c| ln_fact[c]).sum::<f64>();
        sums[t.union_size() - w].add(ln_mult);
    })?;
    let ln_probs = sums.iter().map(|acc| acc.ln_value() - ln_norm).collect();
    UnionSizePmf { s, n, w, ln_probs }.checked()
}

/// Union-size distribution by adding one column at a time: given a union of
/// size `u`, a fresh column adds `j` new rows with hypergeometric probability
/// `C(N - u, j) C(u, w - j) / C(N, w)`. Works for any `s`.
pub fn union_size_pmf_sequential(s: u32, n: usize, w: usize) -> Result<UnionSizePmf> {
    if s == 0 {
        return Err(Error::InvalidParams("s must be at least 1".into()));
    }
    if w > n {
        return Err(Error::InvalidParams(format!("weight {w} exceeds length {n}")));
    }
    let (nn, ww) = (n as u64, w as u64);
    let ln_norm = ln_choose(nn, ww);
    // index u - w
    let mut ln_probs = vec![0.0];
    for step in 2..=s {
        let hi = support_max(step, n, w);
        let mut next: Vec<LogSum> = (w..=hi).map(|_| LogSum::new()).collect();
        for (i, &lp) in ln_probs.iter().enumerate() {
            if lp == f64::NEG_INFINITY {
                continue;
            }
            let u = (w + i) as u64;
            let j_lo = ww.saturating_sub(u);
            let j_hi = ww.min(nn - u);
            for j in j_lo..=j_hi {
                let ln_step = ln_choose(nn - u, j) + ln_choose(u, ww - j) - ln_norm;
                next[i + j as usize].add(lp + ln_step);
            }
        }
        ln_probs = next.iter().map(LogSum::ln_value).collect();
    }
    UnionSizePmf { s, n, w, ln_probs }.checked()
}
