use super::{check_s, check_weight, Bounds, ParametricPoint};
use crate::error::{Error, Result};
use crate::numerics::{bisect, h2, positive_part, xlog2x, DEFAULT_MAX_ITERATIONS};

/// `1 + y + ... + y^(k-1)`, zero for `k = 0`.
#[inline]
pub(crate) fn geometric_sum(k: u32, y: f64) -> f64 {
    let mut acc = 0.0;
    for _ in 0..k {
        acc = acc * y + 1.0;
    }
    acc
}

#[inline]
pub(crate) fn q_of_y_unchecked(s: u32, q_weight: f64, y: f64) -> f64 {
    q_weight * geometric_sum(s, y)
}

/// Union fraction `q = Q (1 - y^s) / (1 - y)` for `0 < y < 1`.
pub fn q_of_y(s: u32, q_weight: f64, y: f64) -> Result<f64> {
    check_s(s)?;
    check_weight(q_weight)?;
    if !(y > 0.0 && y < 1.0) {
        return Err(Error::domain("y", y, "(0, 1)"));
    }
    Ok(q_of_y_unchecked(s, q_weight, y))
}

/// `1 - (1 - Q)^s`: the expected relative size of a union of `s` columns and
/// the zero of the rate function.
pub fn union_fraction_at_optimum(s: u32, q_weight: f64) -> f64 {
    -(s as f64 * (-q_weight).ln_1p()).exp_m1()
}

/// Largest admissible union fraction, `min(1, sQ)`.
#[inline]
pub(crate) fn q_max(s: u32, q_weight: f64) -> f64 {
    (s as f64 * q_weight).min(1.0)
}

/// `q h(Q/q)`, the quantity whose complement against `h(Q)` is the per-column
/// covering exponent.
#[inline]
pub(crate) fn cover_term(q_weight: f64, q: f64) -> f64 {
    q * h2((q_weight / q).min(1.0))
}

// Gap between the evaluation point and the upper end of the q-range when the
// endpoint itself is requested.
const UPPER_ENDPOINT_OFFSET: f64 = 1e-9;

impl Bounds {
    /// Inverts [`q_of_y`] on `y ∈ (0, 1)`.
    pub fn y_of_q(&self, s: u32, q_weight: f64, q: f64) -> Result<ParametricPoint> {
        check_s(s)?;
        check_weight(q_weight)?;
        let hi = q_max(s, q_weight);
        if !(q > q_weight && q < hi) {
            return Err(Error::domain("q", q, "(Q, min(1, sQ))"));
        }
        self.y_of_q_unchecked(s, q_weight, q)
    }

    pub(crate) fn y_of_q_unchecked(&self, s: u32, q_weight: f64, q: f64) -> Result<ParametricPoint> {
        // |dq/dy| <= Q s (s - 1) / 2 on [0, 1]; shrink the y tolerance so the
        // round trip in q meets the root tolerance.
        let slope = q_weight * (s as f64) * (s as f64 - 1.0) / 2.0;
        let tol = self.tol.root / (1.0 + slope);
        let root = bisect(
            |y| q_of_y_unchecked(s, q_weight, y) - q,
            0.0,
            1.0,
            tol,
            DEFAULT_MAX_ITERATIONS,
        )?;
        Ok(ParametricPoint { y: root.x, q })
    }

    /// The rate function `A(s, Q, q)`: minus the normalized log-probability
    /// that the union of `s` random weight-`QN` columns has `qN` ones.
    ///
    /// Interior points use the parametric form through `y`. At `q = Q` the
    /// limit `(s - 1) h(Q)` is returned, and at `q = min(1, sQ)` the value is
    /// taken just inside the interval.
    pub fn rate_function(&self, s: u32, q_weight: f64, q: f64) -> Result<f64> {
        check_s(s)?;
        check_weight(q_weight)?;
        let hi = q_max(s, q_weight);
        let slack = 1e-15;
        if !(q >= q_weight - slack && q <= hi + slack) {
            return Err(Error::domain("q", q, "[Q, min(1, sQ)]"));
        }
        if s == 1 || q <= q_weight {
            return Ok((s as f64 - 1.0) * h2(q_weight));
        }
        let q = if q >= hi - UPPER_ENDPOINT_OFFSET {
            hi - UPPER_ENDPOINT_OFFSET
        } else {
            q
        };
        let y = self.y_of_q_unchecked(s, q_weight, q)?.y;
        Ok(rate_function_at(s, q_weight, q, y))
    }

    /// `A(s, Q, q) + L [h(Q) - q h(Q/q)]`; its minimum over `q` is the list
    /// exponent `A_L(s, Q)`.
    pub fn list_objective(&self, s: u32, l: u32, q_weight: f64, q: f64) -> Result<f64> {
        let a = self.rate_function(s, q_weight, q)?;
        Ok(a + l as f64 * (h2(q_weight) - cover_term(q_weight, q)))
    }

    /// `A(s, Q, q) + L [h(Q) - q h(Q/q) - R]^+`; its minimum over `q` is the
    /// exponent at fixed `Q`.
    pub fn exponent_objective(&self, s: u32, l: u32, rate: f64, q_weight: f64, q: f64) -> Result<f64> {
        let a = self.rate_function(s, q_weight, q)?;
        Ok(a + l as f64 * positive_part(h2(q_weight) - cover_term(q_weight, q) - rate))
    }
}

/// Parametric form of `A(s, Q, q)` given the matching `y`.
///
/// Rearranged so that the `log2 y` terms combine into `s (q - Q) log2 y`,
/// which stays accurate as `y -> 0`.
pub(crate) fn rate_function_at(s: u32, q_weight: f64, q: f64, y: f64) -> f64 {
    let sf = s as f64;
    xlog2x(1.0 - q)
        + q * q_weight.log2()
        + (sf * q_weight - q) * (1.0 - y).log2()
        + sf * (q - q_weight) * y.log2()
        + sf * h2(q_weight)
}
