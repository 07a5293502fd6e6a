use serde::{Deserialize, Serialize};

use super::capacity::capacity_unchecked;
use super::rate_function::{cover_term, rate_function_at};
use super::{
    check_rate, check_sl, check_weight, BoundResult, Bounds, Diagnostics, BRANCH_AGREEMENT, Q_SEARCH_HI, Q_SEARCH_LO,
};
use crate::error::{Error, Result};
use crate::numerics::{bisect, h2, maximize_scalar_with, DEFAULT_MAX_ITERATIONS};

/// Piece of the exponent curve a rate falls on.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Branch {
    /// `A_L(s,Q) - L R`, for `R <= R_cr(s,L,Q)`.
    Linear,
    /// `A(s, Q, q1(R, Q))`, for `R_cr(s,L,Q) <= R <= C(s,Q)`.
    Curved,
    /// Zero, for `R >= C(s, Q)`.
    Zero,
}

impl Branch {
    pub fn as_str(self) -> &'static str {
        match self {
            Branch::Linear => "linear",
            Branch::Curved => "curved",
            Branch::Zero => "zero",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ExponentPoint {
    pub value: f64,
    pub branch: Branch,
    /// Union fraction at which the inner minimum is attained.
    pub q_min: f64,
    pub r_critical: f64,
    pub capacity: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CurveSample {
    pub rate: f64,
    pub exponent: f64,
    pub q_weight: f64,
    pub branch: Branch,
    /// `dE/dR`; absent within the breakpoint margin.
    pub slope: Option<f64>,
}

/// Samples of the exponent as a function of the rate, with its breakpoints.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExponentCurve {
    pub s: u32,
    pub l: u32,
    /// Fixed relative weight, or `None` when `Q` is optimized per rate.
    pub q_weight: Option<f64>,
    pub r_critical: f64,
    pub capacity: f64,
    pub samples: Vec<CurveSample>,
}

impl Bounds {
    /// Root `q ∈ (Q, 1)` of `h(Q) - q h(Q/q) = R`, for `0 < R < h(Q)`.
    #[doc(alias = "q1_of_R")]
    pub fn q_at_rate(&self, rate: f64, q_weight: f64) -> Result<f64> {
        check_weight(q_weight)?;
        let hq = h2(q_weight);
        if !(rate > 0.0 && rate < hq) {
            return Err(Error::domain("R", rate, "(0, h(Q))"));
        }
        let root = bisect(
            |q| hq - cover_term(q_weight, q) - rate,
            q_weight,
            1.0,
            self.tol.root,
            DEFAULT_MAX_ITERATIONS,
        )?;
        Ok(root.x)
    }

    fn curved_branch(&self, s: u32, rate: f64, q_weight: f64) -> Result<(f64, f64)> {
        let q = self.q_at_rate(rate, q_weight)?;
        let y = self.y_of_q_unchecked(s, q_weight, q)?.y;
        Ok((rate_function_at(s, q_weight, q, y), q))
    }

    /// `E_L(s, R, Q)` in piecewise form, with the branch it came from.
    pub fn exponent_point(&self, s: u32, l: u32, rate: f64, q_weight: f64) -> Result<ExponentPoint> {
        check_sl(s, l)?;
        check_weight(q_weight)?;
        check_rate(rate)?;
        let q2 = self.q2_minimizer(s, l, q_weight)?.q;
        let r_critical = self.r_critical_at_q(s, l, q_weight)?;
        let capacity = capacity_unchecked(s, q_weight);
        let lf = l as f64;
        let point = |value, branch, q_min| ExponentPoint {
            value,
            branch,
            q_min,
            r_critical,
            capacity,
        };

        if rate <= r_critical {
            let value = self.list_exponent(s, l, q_weight)? - lf * rate;
            if rate == r_critical && r_critical < capacity && rate > 0.0 {
                let (other, _) = self.curved_branch(s, rate, q_weight)?;
                check_agreement(value, other, rate)?;
            }
            return Ok(point(value, Branch::Linear, q2));
        }
        if rate <= capacity {
            let (value, q1) = self.curved_branch(s, rate, q_weight)?;
            if rate == capacity {
                check_agreement(value, 0.0, rate)?;
            }
            return Ok(point(value, Branch::Curved, q1));
        }
        Ok(point(0.0, Branch::Zero, super::union_fraction_at_optimum(s, q_weight)))
    }

    /// Error exponent of the ensemble at fixed `Q`.
    pub fn exponent_at_q(&self, s: u32, l: u32, rate: f64, q_weight: f64) -> Result<f64> {
        Ok(self.exponent_point(s, l, rate, q_weight)?.value)
    }

    /// Exponent lower bound `max_Q E_L(s, R, Q)`.
    pub fn exponent(&self, s: u32, l: u32, rate: f64) -> Result<BoundResult> {
        check_sl(s, l)?;
        check_rate(rate)?;
        let mut failure = None;
        let m = maximize_scalar_with(
            |q| match self.exponent_at_q(s, l, rate, q) {
                Ok(v) => v,
                Err(e) => {
                    failure.get_or_insert(e);
                    f64::NAN
                }
            },
            Q_SEARCH_LO,
            Q_SEARCH_HI,
            self.tol.argmax,
            self.tol.grid_points,
        )
        .map_err(|e| failure.take().unwrap_or(e))?;
        Ok(BoundResult {
            value: m.f_star,
            inner: None,
            argmax_q: Some(m.x_star),
            diagnostics: Diagnostics {
                evaluations: m.evaluations,
                ..Diagnostics::default()
            },
        })
    }

    /// Largest rate on which the optimized exponent still coincides with the
    /// line `(s + L - 1) R_rc(s, L) - L R`.
    ///
    /// The optimized exponent never drops below that line and the gap is
    /// nondecreasing in `R`, so the set where the gap is at most `1e-8` is an
    /// interval starting at zero; its right end is found by bisection.
    pub fn r_critical(&self, s: u32, l: u32) -> Result<BoundResult> {
        const LINE_GAP: f64 = 1e-8;
        let rate = self.rate_rc(s, l)?;
        let intercept = (s + l - 1) as f64 * rate.value;
        let cap = self.capacity(s)?.value;
        let lf = l as f64;
        let gap = |r: f64| -> Result<f64> { Ok(self.exponent(s, l, r)?.value - (intercept - lf * r)) };

        let (mut lo, mut hi) = (0.0, cap);
        if gap(hi)? <= LINE_GAP {
            lo = hi;
        }
        let mut iterations = 0;
        while hi - lo > self.tol.root.max(1e-10) && iterations < DEFAULT_MAX_ITERATIONS {
            iterations += 1;
            let mid = 0.5 * (lo + hi);
            if gap(mid)? <= LINE_GAP {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        Ok(BoundResult {
            value: lo,
            inner: None,
            argmax_q: rate.argmax_q,
            diagnostics: Diagnostics {
                iterations,
                residual: hi - lo,
                ..Diagnostics::default()
            },
        })
    }

    /// Closed-form `dE_L(s, R, Q)/dR` on the branch containing `R`.
    ///
    /// Rates within `1e-9` of a breakpoint are rejected.
    pub fn exponent_derivative_at_q(&self, s: u32, l: u32, rate: f64, q_weight: f64) -> Result<f64> {
        const MARGIN: f64 = 1e-9;
        check_sl(s, l)?;
        check_weight(q_weight)?;
        check_rate(rate)?;
        let r_critical = self.r_critical_at_q(s, l, q_weight)?;
        let capacity = capacity_unchecked(s, q_weight);
        for breakpoint in [r_critical, capacity] {
            if (rate - breakpoint).abs() <= MARGIN {
                return Err(Error::BranchBoundary {
                    rate,
                    breakpoint,
                    margin: MARGIN,
                });
            }
        }
        if rate < r_critical {
            return Ok(-(l as f64));
        }
        if rate > capacity {
            return Ok(0.0);
        }
        let q = self.q_at_rate(rate, q_weight)?;
        let y = self.y_of_q_unchecked(s, q_weight, q)?.y;
        let qys = q_weight * y.powi(s as i32);
        let num = (qys / (qys - (y - (1.0 - q_weight)))).log2();
        let den = ((q - q_weight) / q).log2();
        Ok(num / den)
    }

    /// Exponent samples on `n` equispaced rates in `[r_lo, r_hi]`, at a fixed
    /// `Q` or with `Q` optimized per rate.
    pub fn exponent_curve(
        &self,
        s: u32,
        l: u32,
        q_weight: Option<f64>,
        r_lo: f64,
        r_hi: f64,
        n: usize,
    ) -> Result<ExponentCurve> {
        check_sl(s, l)?;
        check_rate(r_lo)?;
        check_rate(r_hi)?;
        if !(r_lo <= r_hi) || n == 0 || (n == 1 && r_lo != r_hi) {
            return Err(Error::InvalidParams(format!(
                "rate grid {r_lo}:{r_hi}:{n} is empty or reversed"
            )));
        }
        let (r_critical, capacity) = match q_weight {
            Some(q) => {
                check_weight(q)?;
                (self.r_critical_at_q(s, l, q)?, capacity_unchecked(s, q))
            }
            None => (self.r_critical(s, l)?.value, self.capacity(s)?.value),
        };
        let step = if n > 1 { (r_hi - r_lo) / (n - 1) as f64 } else { 0.0 };
        let mut samples = Vec::with_capacity(n);
        for i in 0..n {
            let rate = if i + 1 == n { r_hi } else { r_lo + step * i as f64 };
            let q = match q_weight {
                Some(q) => q,
                None => self.exponent(s, l, rate)?.argmax_q.unwrap_or(Q_SEARCH_LO),
            };
            let p = self.exponent_point(s, l, rate, q)?;
            let slope = match self.exponent_derivative_at_q(s, l, rate, q) {
                Ok(d) => Some(d),
                Err(Error::BranchBoundary { .. }) => None,
                Err(e) => return Err(e),
            };
            samples.push(CurveSample {
                rate,
                exponent: p.value,
                q_weight: q,
                branch: p.branch,
                slope,
            });
        }
        Ok(ExponentCurve {
            s,
            l,
            q_weight,
            r_critical,
            capacity,
            samples,
        })
    }
}

fn check_agreement(left: f64, right: f64, rate: f64) -> Result<()> {
    if (left - right).abs() > BRANCH_AGREEMENT {
        return Err(Error::Consistency(format!(
            "exponent branches disagree at breakpoint R = {rate}: {left} vs {right}"
        )));
    }
    Ok(())
}
