use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::EnsembleSpec;
use crate::error::{Error, Result};
use crate::rng::count_hits;
use crate::verifier::{BinaryCode, Column};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MonteCarloEstimate {
    pub trials: u64,
    pub hits: u64,
    pub estimate: f64,
    pub stderr: f64,
    pub seed: u64,
}

impl MonteCarloEstimate {
    fn new(trials: u64, hits: u64, seed: u64) -> Self {
        let estimate = hits as f64 / trials as f64;
        MonteCarloEstimate {
            trials,
            hits,
            estimate,
            stderr: (estimate * (1.0 - estimate) / trials as f64).sqrt(),
            seed,
        }
    }
}

/// Scratch permutation of the row indices for partial Fisher-Yates draws.
///
/// The permutation is never reset: shuffling the first `w` slots of any
/// arrangement yields a uniform `w`-subset, so consecutive draws can reuse it.
struct RowDraw {
    perm: Vec<usize>,
}

impl RowDraw {
    fn new(n: usize) -> Self {
        RowDraw { perm: (0..n).collect() }
    }

    /// The `i`-th row of the current draw; slots `0..i` must already be drawn.
    #[inline]
    fn draw(&mut self, rng: &mut ChaCha8Rng, i: usize) -> usize {
        let j = rng.random_range(i..self.perm.len());
        self.perm.swap(i, j);
        self.perm[i]
    }

    fn column(&mut self, rng: &mut ChaCha8Rng, w: usize) -> Column {
        let rows: Vec<usize> = (0..w).map(|i| self.draw(rng, i)).collect();
        Column::from_support(self.perm.len(), &rows)
    }
}

/// Draws `columns` (default `t`) i.i.d. uniform weight-`w` columns from a
/// generator seeded with `spec.seed`.
pub fn sample_code(spec: &EnsembleSpec, columns: Option<usize>) -> BinaryCode {
    let count = columns.unwrap_or(spec.t as usize);
    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
    let mut rows = RowDraw::new(spec.n);
    let cols = (0..count).map(|_| rows.column(&mut rng, spec.w)).collect();
    BinaryCode::from_columns(spec.n, cols).expect("columns share the code length")
}

/// Estimates the probability that a fixed `s`-subset is `s_L`-bad.
///
/// Each trial draws the `s` subset columns, then outside columns one at a
/// time until `L` of them are covered (hit) or all `t - s` are used (miss).
/// An outside column is drawn row by row and abandoned at the first row not
/// in the union; the rows it would have had beyond that point cannot change
/// whether it is covered, so the hit probability is that of the full draw.
pub fn monte_carlo_bad_prob(s: u32, l: u32, spec: &EnsembleSpec, trials: u64) -> Result<MonteCarloEstimate> {
    if s == 0 || l == 0 {
        return Err(Error::InvalidParams("s and L must be at least 1".into()));
    }
    if trials == 0 {
        return Err(Error::InvalidParams("trials must be at least 1".into()));
    }
    if (s as u64) > spec.t {
        return Err(Error::InvalidParams(format!(
            "code size t = {} is smaller than s = {s}",
            spec.t
        )));
    }
    let others = spec.t - s as u64;
    if others < l as u64 {
        return Ok(MonteCarloEstimate::new(trials, 0, spec.seed));
    }
    let (n, w) = (spec.n, spec.w);
    let init = || (RowDraw::new(n), vec![false; n]);
    let hits = count_hits(trials, spec.seed, init, |rng, (rows, union)| {
        union.iter_mut().for_each(|u| *u = false);
        for _ in 0..s {
            for i in 0..w {
                union[rows.draw(rng, i)] = true;
            }
        }
        let mut covered = 0;
        for _ in 0..others {
            if (0..w).all(|i| union[rows.draw(rng, i)]) {
                covered += 1;
                if covered == l {
                    return true;
                }
            }
        }
        false
    });
    Ok(MonteCarloEstimate::new(trials, hits, spec.seed))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sampled_columns_have_weight_w() {
        let spec = EnsembleSpec::new(30, 50, 0.2, 9).unwrap();
        let code = sample_code(&spec, None);
        assert_eq!(code.t(), 50);
        assert_eq!(code.constant_weight(), Some(6));
        assert_eq!(code, sample_code(&spec, None));
        assert_ne!(code, sample_code(&EnsembleSpec { seed: 10, ..spec }, None));
        assert_eq!(sample_code(&spec, Some(3)).t(), 3);
    }

    #[test]
    fn tiny_instance() {
        let spec = EnsembleSpec::with_weight(4, 3, 2, 1).unwrap();
        let e = monte_carlo_bad_prob(2, 1, &spec, 200_000).unwrap();
        assert!((e.estimate - 19.0 / 36.0).abs() <= 4.0 * e.stderr, "{e:?}");
        assert_eq!(e, monte_carlo_bad_prob(2, 1, &spec, 200_000).unwrap());
        let none = monte_carlo_bad_prob(2, 2, &spec, 10).unwrap();
        assert_eq!((none.hits, none.estimate), (0, 0.0));
    }
}
