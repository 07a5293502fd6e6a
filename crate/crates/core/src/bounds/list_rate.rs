use super::rate_function::{cover_term, geometric_sum, q_max, q_of_y_unchecked, union_fraction_at_optimum};
use super::{
    check_s, check_sl, check_weight, BoundResult, Bounds, Diagnostics, ParametricPoint, Q_SEARCH_HI, Q_SEARCH_LO,
};
use crate::error::{Error, Result};
use crate::numerics::{bisect, h2, kl2, maximize_scalar_with, DEFAULT_MAX_ITERATIONS};

const COLLAPSE_GAP: f64 = 1e-9;

impl Bounds {
    /// Unique root `y ∈ [1 - Q, 1)` of
    /// `y = 1 - Q + Q y^s [1 - ((y - y^s) / (1 - y^s))^L]`.
    ///
    /// Both ratios are evaluated through geometric sums, so the right end of
    /// the bracket can be `y = 1` itself, where the residual is
    /// `Q ((s-1)/s)^L > 0`. For `s = 1` the equation is degenerate and the
    /// bracket endpoint `1 - Q` is returned.
    ///
    /// When `sQ < 1` the root approaches 1 as `L` grows (like
    /// `((s-1)/s)^L`); once it is within rounding of 1 the value `1.0` is
    /// returned and the minimizer sits at the upper end `q = min(1, sQ)`.
    /// "Close" means within `COLLAPSE_GAP`, where the endpoint value differs
    /// from the true minimum by far less than any solver tolerance.
    #[doc(alias = "y_root_theorem1")]
    pub fn stationary_y(&self, s: u32, l: u32, q_weight: f64) -> Result<f64> {
        check_sl(s, l)?;
        check_weight(q_weight)?;
        if s == 1 {
            return Ok(1.0 - q_weight);
        }
        // Q - (1-y) - Q y^s (1 - r^L) with Q (1 - y^s) = Q (1-y) S_s(y) pulled out
        let residual = |y: f64| {
            let ratio = y * geometric_sum(s - 1, y) / geometric_sum(s, y);
            let g =
                (1.0 - y) * (q_weight * geometric_sum(s, y) - 1.0) + q_weight * y.powi(s as i32) * ratio.powi(l as i32);
            if y >= 1.0 {
                // Q ((s-1)/s)^L > 0 even when it underflows
                g.max(f64::MIN_POSITIVE)
            } else {
                g
            }
        };
        let lo = 1.0 - q_weight;
        if residual(lo) >= 0.0 {
            // root sits at the bracket end to machine precision (Q close to 1)
            return Ok(lo);
        }
        // machine resolution: the closed form for A_L is not stationary in y
        let root = bisect(residual, lo, 1.0, 0.0, DEFAULT_MAX_ITERATIONS)?;
        if 1.0 - root.x <= COLLAPSE_GAP {
            return Ok(1.0);
        }
        Ok(root.x)
    }

    /// `A_L(s, Q) = log2(Q/(1-y)) - s K(Q, 1-y) - L K(Q, (1-y)/(1-y^s))`
    /// at the stationary `y`; equals `min_q [A(s,Q,q) + L(h(Q) - q h(Q/q))]`.
    #[doc(alias = "exponent_A_L")]
    pub fn list_exponent(&self, s: u32, l: u32, q_weight: f64) -> Result<f64> {
        check_sl(s, l)?;
        check_weight(q_weight)?;
        if s == 1 {
            // the q-range collapses to {Q}
            return Ok(l as f64 * h2(q_weight));
        }
        let y = self.stationary_y(s, l, q_weight)?;
        if y >= 1.0 {
            return self.list_objective(s, l, q_weight, q_max(s, q_weight));
        }
        Ok(list_exponent_at(s, l, q_weight, y))
    }

    /// Random-coding rate bound `max_Q A_L(s, Q) / (s + L - 1)`.
    pub fn rate_rc(&self, s: u32, l: u32) -> Result<BoundResult> {
        check_sl(s, l)?;
        let mut failure = None;
        let m = maximize_scalar_with(
            |q| match self.list_exponent(s, l, q) {
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
        let q_star = m.x_star;
        Ok(BoundResult {
            value: m.f_star / (s + l - 1) as f64,
            inner: Some(self.stationary_y(s, l, q_star)?),
            argmax_q: Some(q_star),
            diagnostics: Diagnostics {
                evaluations: m.evaluations,
                ..Diagnostics::default()
            },
        })
    }

    /// Minimizer `(y2, q2)` of `A(s,Q,q) + L[h(Q) - q h(Q/q)]`.
    pub fn q2_minimizer(&self, s: u32, l: u32, q_weight: f64) -> Result<ParametricPoint> {
        let y = self.stationary_y(s, l, q_weight)?;
        let q = if y >= 1.0 {
            q_max(s, q_weight)
        } else {
            q_of_y_unchecked(s, q_weight, y)
        };
        if s >= 2 {
            let q0 = union_fraction_at_optimum(s, q_weight);
            if !(q > q0 - 1e-12) {
                return Err(Error::Consistency(format!(
                    "minimizer q2 = {q} does not exceed 1-(1-Q)^s = {q0}"
                )));
            }
        }
        Ok(ParametricPoint { y, q })
    }

    /// Critical rate at fixed `Q`: `h(Q) - q2 h(Q/q2)`. Below it the exponent
    /// at `Q` is the straight line `A_L(s,Q) - L R`.
    pub fn r_critical_at_q(&self, s: u32, l: u32, q_weight: f64) -> Result<f64> {
        let p = self.q2_minimizer(s, l, q_weight)?;
        // q2 = 1 gives h(Q) - h(Q), which may round below zero
        Ok((h2(q_weight) - cover_term(q_weight, p.q)).max(0.0))
    }
}

pub(crate) fn list_exponent_at(s: u32, l: u32, q_weight: f64, y: f64) -> f64 {
    let one_minus_y = 1.0 - y;
    (q_weight / one_minus_y).log2()
        - s as f64 * kl2(q_weight, one_minus_y)
        - l as f64 * kl2(q_weight, 1.0 / geometric_sum(s, y))
}

/// Limit of the rate bound as `L -> inf`: `log2[(s-1)^(s-1) / s^s + 1]`,
/// with `0^0 = 1`.
#[doc(alias = "rate_rc_inf")]
pub fn rate_rc_limit(s: u32) -> Result<f64> {
    check_s(s)?;
    let sf = s as f64;
    let ln_ratio = if s == 1 {
        0.0
    } else {
        (sf - 1.0) * (sf - 1.0).ln() - sf * sf.ln()
    };
    Ok(ln_ratio.exp().ln_1p() / std::f64::consts::LN_2)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn stationary_y_solves_equation() {
        let b = Bounds::default();
        for (s, l, q) in [(2, 2, 0.244), (3, 5, 0.156), (10, 10, 0.053), (4, 1, 0.9)] {
            let y = b.stationary_y(s, l, q).unwrap();
            let ys = y.powi(s as i32);
            let g = y - (1.0 - q) - q * ys * (1.0 - ((y - ys) / (1.0 - ys)).powi(l as i32));
            assert!(g.abs() <= 1e-12, "residual {g}");
            assert!(y >= 1.0 - q && y < 1.0);
        }
        assert_eq!(b.stationary_y(1, 3, 0.2).unwrap(), 0.8);
    }

    #[test]
    fn stationary_y_large_list_limit() {
        // as L grows the root tends to the root of y = 1 - Q + Q y^s
        // (only an interior root when sQ > 1)
        let b = Bounds::default();
        for (s, q) in [(2u32, 0.6f64), (3, 0.4), (5, 0.3)] {
            let y_big = b.stationary_y(s, 400, q).unwrap();
            let limit = bisect(|y| q - (1.0 - y) - q * y.powi(s as i32), 1.0 - q, 1.0 - 1e-15, 0.0, 500)
                .unwrap()
                .x;
            assert!((y_big - limit).abs() <= 1e-6, "{y_big} vs {limit}");
        }
    }

    #[test]
    fn stationary_y_collapses_for_light_columns() {
        let b = Bounds::default();
        assert_eq!(b.stationary_y(2, 400, 0.2).unwrap(), 1.0);
        let p = b.q2_minimizer(2, 400, 0.2).unwrap();
        assert!((p.q - 0.4).abs() < 1e-15);
        let a = b.list_exponent(2, 400, 0.2).unwrap();
        assert!(a.is_finite());
        // nearly collapsed but still interior: the two evaluations meet
        let interior = b.list_exponent(2, 40, 0.2).unwrap();
        let endpoint = b.list_objective(2, 40, 0.2, 0.4).unwrap();
        assert!((interior - endpoint).abs() < 1e-6, "{interior} vs {endpoint}");
    }

    #[test]
    fn rate_cells() {
        let b = Bounds::default();
        for (s, l, q_opt, rate) in [
            (2u32, 2u32, 0.244, 0.2358),
            (10, 10, 0.053, 0.0335),
            (6, 3, 0.095, 0.0420),
        ] {
            let r = b.rate_rc(s, l).unwrap();
            assert!((r.value - rate).abs() <= 5e-4, "{s}_{l}: {}", r.value);
            assert!((r.argmax_q.unwrap() - q_opt).abs() <= 5e-3);
        }
        let a = b.list_exponent(3, 5, 0.156).unwrap() / 7.0;
        assert!((a - 0.1552).abs() <= 5e-4);
        let a = b.list_exponent(2, 2, 0.244).unwrap() / 3.0;
        assert!((a - 0.2358).abs() <= 5e-4);
    }

    #[test]
    fn s_one_degenerates_to_entropy() {
        let b = Bounds::default();
        assert!((b.list_exponent(1, 3, 0.5).unwrap() - 3.0).abs() < 1e-15);
        let r = b.rate_rc(1, 2).unwrap();
        assert!((r.value - 1.0).abs() < 1e-12);
        let p = b.q2_minimizer(1, 2, 0.3).unwrap();
        assert!((p.q - 0.3).abs() < 1e-15);
    }

    #[test]
    fn rate_limit_values() {
        assert_eq!(rate_rc_limit(1).unwrap(), 1.0);
        assert!((rate_rc_limit(2).unwrap() - 1.25f64.log2()).abs() < 1e-15);
        assert!((rate_rc_limit(2).unwrap() - 0.321_928).abs() < 1e-6);
        // log2(e) / (e s) asymptotics
        let s = 40.0;
        let asym = std::f64::consts::LOG2_E / (std::f64::consts::E * s);
        let v = rate_rc_limit(40).unwrap();
        assert!((v / asym - 1.0).abs() < 0.02, "{v} vs {asym}");
        assert!(rate_rc_limit(0).is_err());
    }

    #[test]
    fn q2_exceeds_typical_union() {
        let b = Bounds::default();
        let p = b.q2_minimizer(2, 2, 0.244).unwrap();
        assert!(p.q > 1.0 - 0.756f64.powi(2));
        let r = b.r_critical_at_q(2, 2, 0.244).unwrap();
        assert!((r - 0.3355).abs() < 1e-3);
    }
}
