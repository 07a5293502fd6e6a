use rand::seq::index;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::code::{BinaryCode, Column};
use crate::error::{Error, Result};
use crate::rng::{block_rng, count_hits, BLOCK_TRIALS};

/// Largest number of `s`-subsets [`count_bad`] will enumerate.
pub const DEFAULT_SUBSET_BUDGET: u64 = 10_000_000;

/// One `s_L`-bad subset `S` and the first `L` outside columns its union
/// covers. Indices are zero-based.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BadWitness {
    pub subset: Vec<usize>,
    pub covered: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BadCountReport {
    pub s: u32,
    pub l: u32,
    /// `C(t, s)`, saturating at `u64::MAX`.
    pub subsets: u64,
    /// Subsets actually tested: all of them when exact, the sample size
    /// otherwise.
    pub examined: u64,
    pub bad: u64,
    pub good: u64,
    pub epsilon: f64,
    /// Binomial standard error of `epsilon`; only for sampled counts.
    pub stderr: Option<f64>,
    /// The lexicographically first bad subset (exact mode) or the first bad
    /// sample (sampled mode).
    pub witness: Option<BadWitness>,
}

/// `C(n, k)` saturating at `u64::MAX`.
pub fn n_choose_k(n: u64, k: u64) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        // exact: acc * (n - i) is divisible by i + 1
        acc = acc * (n - i) as u128 / (i + 1) as u128;
        if acc > u64::MAX as u128 {
            return u64::MAX;
        }
    }
    acc as u64
}

fn check_sl(code: &BinaryCode, s: u32, l: u32) -> Result<()> {
    let t = code.t();
    if s == 0 || l == 0 {
        return Err(Error::InvalidParams("s and L must be at least 1".into()));
    }
    if s as usize >= t {
        return Err(Error::InvalidParams(format!("s = {s} must be below t = {t}")));
    }
    if (s + l) as usize > t {
        return Err(Error::InvalidParams(format!("s + L = {} exceeds t = {t}", s + l)));
    }
    Ok(())
}

/// Scans the columns outside the sorted set `subset` in increasing order and
/// returns the first `l` covered by `union` (fewer if there are not enough).
fn covered_outside(code: &BinaryCode, subset: &[usize], union: &Column, l: usize) -> Vec<usize> {
    let mut covered = Vec::with_capacity(l);
    let mut members = subset.iter().peekable();
    for j in 0..code.t() {
        if members.peek() == Some(&&j) {
            members.next();
            continue;
        }
        if union.covers_unchecked(code.column(j)) {
            covered.push(j);
            if covered.len() == l {
                break;
            }
        }
    }
    covered
}

fn sorted_subset(code: &BinaryCode, subset: &[usize]) -> Result<Vec<usize>> {
    let mut sorted = subset.to_vec();
    sorted.sort_unstable();
    if let Some(&j) = sorted.iter().find(|&&j| j >= code.t()) {
        return Err(Error::IndexOutOfRange { index: j, t: code.t() });
    }
    if sorted.windows(2).any(|w| w[0] == w[1]) {
        return Err(Error::InvalidParams("subset indices must be distinct".into()));
    }
    Ok(sorted)
}

/// Returns the witness `Λ` (the first `L` covered outside columns) when the
/// columns `subset` form an `s_L`-bad set, `None` when they are good.
pub fn bad_subset_witness(code: &BinaryCode, subset: &[usize], l: u32) -> Result<Option<Vec<usize>>> {
    let sorted = sorted_subset(code, subset)?;
    check_sl(code, sorted.len() as u32, l)?;
    let mut union = Column::zeros(code.n());
    for &j in &sorted {
        union.or_assign(code.column(j));
    }
    let covered = covered_outside(code, &sorted, &union, l as usize);
    Ok((covered.len() == l as usize).then_some(covered))
}

/// The union of `subset` covers at least `L` columns outside it.
pub fn is_bad_subset(code: &BinaryCode, subset: &[usize], l: u32) -> Result<bool> {
    Ok(bad_subset_witness(code, subset, l)?.is_some())
}

/// Exhaustive count of `s_L`-bad subsets over all `C(t, s)` subsets.
pub fn count_bad(code: &BinaryCode, s: u32, l: u32) -> Result<BadCountReport> {
    count_bad_with_budget(code, s, l, DEFAULT_SUBSET_BUDGET)
}

pub fn count_bad_with_budget(code: &BinaryCode, s: u32, l: u32, budget: u64) -> Result<BadCountReport> {
    check_sl(code, s, l)?;
    let t = code.t();
    let subsets = n_choose_k(t as u64, s as u64);
    if subsets > budget {
        return Err(Error::BudgetExceeded {
            what: "s-subsets to enumerate",
            needed: subsets as f64,
            budget: budget as f64,
        });
    }
    let s = s as usize;
    // subsets are split by their smallest index
    let parts: Vec<(u64, Option<BadWitness>)> = (0..=t - s)
        .into_par_iter()
        .map(|first| {
            let mut walk = SubsetWalk::new(code, s, l as usize, first);
            walk.run();
            (walk.bad, walk.witness)
        })
        .collect();
    let bad: u64 = parts.iter().map(|p| p.0).sum();
    let witness = parts.into_iter().find_map(|p| p.1);
    Ok(BadCountReport {
        s: s as u32,
        l,
        subsets,
        examined: subsets,
        bad,
        good: subsets - bad,
        epsilon: bad as f64 / subsets as f64,
        stderr: None,
        witness,
    })
}

/// Depth-first walk over the subsets with a fixed smallest index, in
/// lexicographic order, keeping one partial union per depth.
struct SubsetWalk<'a> {
    code: &'a BinaryCode,
    s: usize,
    l: usize,
    stack: Vec<usize>,
    unions: Vec<Column>,
    bad: u64,
    witness: Option<BadWitness>,
}

impl<'a> SubsetWalk<'a> {
    fn new(code: &'a BinaryCode, s: usize, l: usize, first: usize) -> Self {
        let mut unions = vec![Column::zeros(code.n()); s];
        unions[0] = code.column(first).clone();
        SubsetWalk {
            code,
            s,
            l,
            stack: vec![first],
            unions,
            bad: 0,
            witness: None,
        }
    }

    fn run(&mut self) {
        let depth = self.stack.len();
        if depth == self.s {
            let union = &self.unions[depth - 1];
            let covered = covered_outside(self.code, &self.stack, union, self.l);
            if covered.len() == self.l {
                self.bad += 1;
                if self.witness.is_none() {
                    self.witness = Some(BadWitness {
                        subset: self.stack.clone(),
                        covered,
                    });
                }
            }
            return;
        }
        let t = self.code.t();
        let next_lo = self.stack[depth - 1] + 1;
        let next_hi = t - (self.s - depth);
        for j in next_lo..=next_hi {
            let (done, rest) = self.unions.split_at_mut(depth);
            rest[0].clone_from(&done[depth - 1]);
            rest[0].or_assign(self.code.column(j));
            self.stack.push(j);
            self.run();
            self.stack.pop();
        }
    }
}

/// Estimates the bad fraction from `samples` uniform `s`-subsets drawn with
/// replacement.
pub fn count_bad_sampled(code: &BinaryCode, s: u32, l: u32, samples: u64, seed: u64) -> Result<BadCountReport> {
    check_sl(code, s, l)?;
    if samples == 0 {
        return Err(Error::InvalidParams("samples must be at least 1".into()));
    }
    let t = code.t();
    let draw = |rng: &mut rand_chacha::ChaCha8Rng, union: &mut Column| {
        let mut subset = index::sample(rng, t, s as usize).into_vec();
        subset.sort_unstable();
        union.clear();
        for &j in &subset {
            union.or_assign(code.column(j));
        }
        (
            covered_outside(code, &subset, union, l as usize).len() == l as usize,
            subset,
        )
    };
    let bad = count_hits(
        samples,
        seed,
        || Column::zeros(code.n()),
        |rng, union| draw(rng, union).0,
    );
    // replay the blocks in order up to the first hit
    let witness = if bad > 0 {
        let mut union = Column::zeros(code.n());
        (0..samples.div_ceil(BLOCK_TRIALS)).find_map(|b| {
            let mut rng = block_rng(seed, b);
            let n = BLOCK_TRIALS.min(samples - b * BLOCK_TRIALS);
            (0..n).find_map(|_| {
                let (hit, subset) = draw(&mut rng, &mut union);
                hit.then(|| BadWitness {
                    covered: covered_outside(code, &subset, &union, l as usize),
                    subset,
                })
            })
        })
    } else {
        None
    };
    let epsilon = bad as f64 / samples as f64;
    Ok(BadCountReport {
        s,
        l,
        subsets: n_choose_k(t as u64, s as u64),
        examined: samples,
        bad,
        good: samples - bad,
        epsilon,
        stderr: Some((epsilon * (1.0 - epsilon) / samples as f64).sqrt()),
        witness,
    })
}

/// Whether `code` is an LD `(s_L, ε)`-code: the bad fraction is at most
/// `epsilon` (non-strict).
pub fn is_ld_code(code: &BinaryCode, s: u32, l: u32, epsilon: f64) -> Result<bool> {
    if !(0.0..1.0).contains(&epsilon) {
        return Err(Error::domain("epsilon", epsilon, "[0, 1)"));
    }
    Ok(count_bad(code, s, l)?.epsilon <= epsilon)
}
