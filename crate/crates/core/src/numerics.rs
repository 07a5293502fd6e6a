//! Special functions and scalar solvers shared by the bound and ensemble code.
//!
//! Every logarithm here is base 2 and `0 * log2(0)` is taken to be `0`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Iteration cap for [`find_root`].
pub const DEFAULT_MAX_ITERATIONS: usize = 200;
/// Grid size used by [`maximize_scalar`] before golden-section refinement.
pub const DEFAULT_GRID_POINTS: usize = 256;

/// Solver tolerances threaded through every bound computation.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Tolerances {
    /// Absolute bracket width at which root finding stops.
    pub root: f64,
    /// Bracket width on the argument at which maximization stops.
    pub argmax: f64,
    /// Number of grid points scanned before refinement.
    pub grid_points: usize,
}

impl Default for Tolerances {
    fn default() -> Self {
        Tolerances {
            root: 1e-12,
            argmax: 1e-10,
            grid_points: DEFAULT_GRID_POINTS,
        }
    }
}

impl Tolerances {
    /// Tight settings for regression fixtures.
    pub fn strict() -> Self {
        Tolerances {
            root: 1e-13,
            argmax: 1e-12,
            grid_points: DEFAULT_GRID_POINTS,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BracketedRoot {
    pub x: f64,
    pub iterations: usize,
    pub residual: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MaximizerResult {
    pub x_star: f64,
    pub f_star: f64,
    pub evaluations: usize,
}

/// `x * log2(x)` with the continuous extension at zero.
#[inline]
pub(crate) fn xlog2x(x: f64) -> f64 {
    if x <= 0.0 {
        0.0
    } else {
        x * x.log2()
    }
}

/// Binary entropy without argument validation; callers guarantee `a ∈ [0, 1]`.
#[inline]
pub(crate) fn h2(a: f64) -> f64 {
    -xlog2x(a) - xlog2x(1.0 - a)
}

/// Binary entropy `h(a) = -a log2 a - (1-a) log2 (1-a)`.
pub fn binary_entropy(a: f64) -> Result<f64> {
    if !(0.0..=1.0).contains(&a) {
        return Err(Error::domain("a", a, "[0, 1]"));
    }
    Ok(h2(a))
}

#[inline]
pub(crate) fn kl2(a: f64, b: f64) -> f64 {
    a * (a / b).log2() + (1.0 - a) * ((1.0 - a) / (1.0 - b)).log2()
}

/// Binary Kullback–Leibler divergence `K(a, b)` in bits.
pub fn kl_div(a: f64, b: f64) -> Result<f64> {
    if !(a > 0.0 && a < 1.0) {
        return Err(Error::domain("a", a, "(0, 1)"));
    }
    if !(b > 0.0 && b < 1.0) {
        return Err(Error::domain("b", b, "(0, 1)"));
    }
    Ok(kl2(a, b))
}

/// `[x]^+`.
#[inline]
pub fn positive_part(x: f64) -> f64 {
    if x >= 0.0 {
        x
    } else {
        0.0
    }
}

/// Bisection on a sign-changing bracket.
///
/// Stops when the bracket is no wider than `tol`, when `f` vanishes exactly, or
/// when the midpoint can no longer be separated from the endpoints in floating
/// point. `tol = 0` therefore means "to machine resolution".
pub(crate) fn bisect<F>(mut f: F, lo: f64, hi: f64, tol: f64, max_iter: usize) -> Result<BracketedRoot>
where
    F: FnMut(f64) -> f64,
{
    let (mut a, mut b) = (lo, hi);
    let mut fa = f(a);
    let fb = f(b);
    if !fa.is_finite() {
        return Err(Error::NonFinite { x: a, value: fa });
    }
    if !fb.is_finite() {
        return Err(Error::NonFinite { x: b, value: fb });
    }
    if fa == 0.0 {
        return Ok(BracketedRoot {
            x: a,
            iterations: 0,
            residual: 0.0,
        });
    }
    if fb == 0.0 {
        return Ok(BracketedRoot {
            x: b,
            iterations: 0,
            residual: 0.0,
        });
    }
    if fa.signum() == fb.signum() {
        return Err(Error::NoSignChange {
            lo,
            hi,
            f_lo: fa,
            f_hi: fb,
        });
    }

    let mut iterations = 0;
    loop {
        let mid = 0.5 * (a + b);
        if b - a <= tol || mid <= a || mid >= b {
            break;
        }
        if iterations >= max_iter {
            return Err(Error::NoConvergence {
                iterations,
                width: b - a,
            });
        }
        iterations += 1;
        let fm = f(mid);
        if !fm.is_finite() {
            return Err(Error::NonFinite { x: mid, value: fm });
        }
        if fm == 0.0 {
            return Ok(BracketedRoot {
                x: mid,
                iterations,
                residual: 0.0,
            });
        }
        if fm.signum() == fa.signum() {
            a = mid;
            fa = fm;
        } else {
            b = mid;
        }
    }
    let x = 0.5 * (a + b);
    Ok(BracketedRoot {
        x,
        iterations,
        residual: f(x),
    })
}

/// Root of `f` on `[lo, hi]` by bisection; `f(lo)` and `f(hi)` must differ in
/// sign (or one of them vanish).
pub fn find_root<F>(f: F, lo: f64, hi: f64, tol: f64) -> Result<BracketedRoot>
where
    F: FnMut(f64) -> f64,
{
    if !(tol > 0.0) {
        return Err(Error::domain("tol", tol, "(0, inf)"));
    }
    if !(lo <= hi) {
        return Err(Error::InvalidParams(format!("empty bracket [{lo}, {hi}]")));
    }
    bisect(f, lo, hi, tol, DEFAULT_MAX_ITERATIONS)
}

/// Global-ish maximization of a scalar function on `[lo, hi]`.
///
/// Scans `DEFAULT_GRID_POINTS` equispaced points, then runs golden-section
/// search inside the two grid cells around the best sample. Nothing assumes
/// unimodality outside that final cell.
pub fn maximize_scalar<F>(f: F, lo: f64, hi: f64, tol: f64) -> Result<MaximizerResult>
where
    F: FnMut(f64) -> f64,
{
    maximize_scalar_with(f, lo, hi, tol, DEFAULT_GRID_POINTS)
}

pub fn maximize_scalar_with<F>(mut f: F, lo: f64, hi: f64, tol: f64, grid_points: usize) -> Result<MaximizerResult>
where
    F: FnMut(f64) -> f64,
{
    if !(lo < hi) {
        return Err(Error::InvalidParams(format!("empty interval [{lo}, {hi}]")));
    }
    if !(tol > 0.0) {
        return Err(Error::domain("tol", tol, "(0, inf)"));
    }
    let grid_points = grid_points.max(3);
    let mut evaluations = 0;
    let mut eval = |x: f64| -> Result<f64> {
        evaluations += 1;
        let v = f(x);
        if v.is_finite() {
            Ok(v)
        } else {
            Err(Error::NonFinite { x, value: v })
        }
    };

    let step = (hi - lo) / (grid_points - 1) as f64;
    let node = |i: usize| {
        if i == grid_points - 1 {
            hi
        } else {
            lo + step * i as f64
        }
    };
    let mut best_i = 0;
    let mut best_x = lo;
    let mut best_f = f64::NEG_INFINITY;
    for i in 0..grid_points {
        let x = node(i);
        let v = eval(x)?;
        if v > best_f {
            best_i = i;
            best_x = x;
            best_f = v;
        }
    }

    // golden section on the two cells adjacent to the best node
    let mut a = node(best_i.saturating_sub(1));
    let mut b = node((best_i + 1).min(grid_points - 1));
    const INV_PHI: f64 = 0.618_033_988_749_894_8;
    let mut x1 = b - INV_PHI * (b - a);
    let mut x2 = a + INV_PHI * (b - a);
    let mut f1 = eval(x1)?;
    let mut f2 = eval(x2)?;
    while b - a > tol {
        if f1 >= f2 {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - INV_PHI * (b - a);
            if x1 <= a || x1 >= x2 {
                break;
            }
            f1 = eval(x1)?;
        } else {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + INV_PHI * (b - a);
            if x2 >= b || x2 <= x1 {
                break;
            }
            f2 = eval(x2)?;
        }
    }
    for (x, v) in [(x1, f1), (x2, f2)] {
        if v > best_f {
            best_x = x;
            best_f = v;
        }
    }
    Ok(MaximizerResult {
        x_star: best_x,
        f_star: best_f,
        evaluations,
    })
}

/// Running log-sum-exp accumulator over natural-log terms.
#[derive(Debug, Clone, Copy)]
pub(crate) struct LogSum {
    max: f64,
    sum: f64,
}

impl LogSum {
    pub(crate) fn new() -> Self {
        LogSum {
            max: f64::NEG_INFINITY,
            sum: 0.0,
        }
    }

    #[inline]
    pub(crate) fn add(&mut self, ln_x: f64) {
        if ln_x == f64::NEG_INFINITY {
            return;
        }
        if ln_x <= self.max {
            self.sum += (ln_x - self.max).exp();
        } else {
            self.sum = self.sum * (self.max - ln_x).exp() + 1.0;
            self.max = ln_x;
        }
    }

    pub(crate) fn ln_value(&self) -> f64 {
        if self.max == f64::NEG_INFINITY {
            f64::NEG_INFINITY
        } else {
            self.max + self.sum.ln()
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn close(a: f64, b: f64, tol: f64) -> bool {
        (a - b).abs() <= tol
    }

    #[test]
    fn entropy_values() {
        assert_eq!(binary_entropy(0.5).unwrap(), 1.0);
        assert_eq!(binary_entropy(0.0).unwrap(), 0.0);
        assert_eq!(binary_entropy(1.0).unwrap(), 0.0);
        // direct evaluation of the closed form
        let a: f64 = 0.2864;
        let direct = -a * a.log2() - (1.0 - a) * (1.0 - a).log2();
        assert!(close(binary_entropy(a).unwrap(), direct, 1e-15));
        assert!(close(binary_entropy(a).unwrap(), 0.864_025_372, 1e-9));
        assert!(binary_entropy(-0.1).is_err());
        assert!(binary_entropy(1.1).is_err());
        assert!(binary_entropy(f64::NAN).is_err());
    }

    #[test]
    fn kl_values() {
        assert_eq!(kl_div(0.3, 0.3).unwrap(), 0.0);
        // K(a,b) = -h(a) - a log2 b - (1-a) log2 (1-b)
        let via_h = |a: f64, b: f64| -h2(a) - a * b.log2() - (1.0 - a) * (1.0 - b).log2();
        let k = kl_div(0.5, 0.25).unwrap();
        assert!(close(k, via_h(0.5, 0.25), 1e-15));
        assert!(close(k, 0.207_518, 1e-6));
        let k19 = kl_div(0.1, 0.9).unwrap();
        assert!(close(k19, via_h(0.1, 0.9), 1e-14));
        assert!(close(k19, 2.536, 1e-3));
        assert!(kl_div(0.0, 0.5).is_err());
        assert!(kl_div(0.5, 1.0).is_err());
    }

    #[test]
    fn kl_nonnegative_on_grid() {
        for i in 1..100 {
            for j in 1..100 {
                let (a, b) = (i as f64 / 100.0, j as f64 / 100.0);
                let k = kl_div(a, b).unwrap();
                if i == j {
                    assert!(k.abs() <= 1e-14);
                } else {
                    assert!(k > 0.0, "K({a},{b}) = {k}");
                }
            }
        }
    }

    #[test]
    fn positive_part_cases() {
        assert_eq!(positive_part(-1.5), 0.0);
        assert_eq!(positive_part(0.0), 0.0);
        assert_eq!(positive_part(2.25), 2.25);
    }

    #[test]
    fn root_of_linear() {
        let r = find_root(|x| x - 0.5, 0.0, 1.0, 1e-12).unwrap();
        assert!(close(r.x, 0.5, 1e-12));
    }

    #[test]
    fn root_errors() {
        assert!(matches!(
            find_root(|x| x * x + 1.0, -1.0, 1.0, 1e-12),
            Err(Error::NoSignChange { .. })
        ));
        assert!(find_root(|x| x, -1.0, 1.0, 0.0).is_err());
        assert!(matches!(
            bisect(|x| x - 0.3, 0.0, 1.0, 0.0, 5),
            Err(Error::NoConvergence { iterations: 5, .. })
        ));
    }

    #[test]
    fn root_of_rate_equation() {
        // y - (1-Q) - Q y^s [1 - ((y - y^s)/(1 - y^s))^L] at s = 2, L = 2
        let q = 0.244;
        let g = |y: f64| {
            let ys = y * y;
            y - (1.0 - q) - q * ys * (1.0 - ((y - ys) / (1.0 - ys)).powi(2))
        };
        let r = find_root(g, 1.0 - q, 1.0 - 1e-12, 1e-12).unwrap();
        assert!(g(r.x).abs() <= 1e-12);
        assert!(r.x > 1.0 - q && r.x < 1.0);
    }

    #[test]
    fn maximize_quadratic() {
        let r = maximize_scalar(|x| -(x - 0.3) * (x - 0.3), 0.0, 1.0, 1e-10).unwrap();
        assert!(close(r.x_star, 0.3, 1e-9));
        assert!(close(r.f_star, 0.0, 1e-18));
        assert!(r.evaluations > DEFAULT_GRID_POINTS);
    }

    #[test]
    fn maximize_rejects_non_finite() {
        let r = maximize_scalar(|x| if x > 0.5 { f64::NAN } else { x }, 0.0, 1.0, 1e-10);
        assert!(matches!(r, Err(Error::NonFinite { .. })));
    }

    #[test]
    fn maximize_picks_global_peak_of_bimodal() {
        let f = |x: f64| (-(x - 0.2).powi(2) * 400.0).exp() + 1.5 * (-(x - 0.8).powi(2) * 400.0).exp();
        let r = maximize_scalar(f, 0.0, 1.0, 1e-10).unwrap();
        assert!(close(r.x_star, 0.8, 1e-6));
    }

    #[test]
    fn logsum_matches_direct() {
        let xs = [0.1f64, 2.0, 1e-5, 3.5];
        let mut acc = LogSum::new();
        for x in xs {
            acc.add(x.ln());
        }
        assert!(close(acc.ln_value().exp(), xs.iter().sum::<f64>(), 1e-14));
        assert_eq!(LogSum::new().ln_value(), f64::NEG_INFINITY);
    }
}
