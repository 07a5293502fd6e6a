use serde::{Deserialize, Serialize};

use super::exact::bad_prob_ln;
use super::EnsembleSpec;
use crate::error::{Error, Result};

/// How the code size `2^{RN}` is rounded to an integer.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
pub enum SizeRounding {
    #[default]
    Ceil,
    Floor,
}

/// `t = ⌈2^{RN}⌉` (or the floor).
pub fn code_size(rate: f64, n: usize, rounding: SizeRounding) -> Result<u64> {
    if !(rate >= 0.0 && rate.is_finite()) {
        return Err(Error::domain("R", rate, "[0, inf)"));
    }
    let exp = rate * n as f64;
    // keep t exactly representable as f64
    if exp > 53.0 {
        return Err(Error::BudgetExceeded {
            what: "code size exponent R N",
            needed: exp,
            budget: 53.0,
        });
    }
    let raw = exp.exp2();
    Ok(match rounding {
        SizeRounding::Ceil => raw.ceil(),
        SizeRounding::Floor => raw.floor(),
    } as u64)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EmpiricalPoint {
    pub n: usize,
    pub t: u64,
    pub w: usize,
    /// `log2` of the exact bad probability.
    pub log2_prob: f64,
    /// `-log2(prob) / N`.
    pub exponent: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EmpiricalExponent {
    pub points: Vec<EmpiricalPoint>,
    /// Least-squares slope of `-log2(prob)` against `N`.
    pub slope: f64,
    pub intercept: f64,
    /// Fit residuals in bits, one per point.
    pub residuals: Vec<f64>,
}

/// Exact finite-length exponents `-log2(P_N)/N` of the ensemble
/// `{N, ⌈2^{RN}⌉, Q}` and a linear fit of `-log2 P_N` in `N`.
pub fn empirical_exponent(
    s: u32,
    l: u32,
    rate: f64,
    q_weight: f64,
    lengths: &[usize],
    rounding: SizeRounding,
) -> Result<EmpiricalExponent> {
    if lengths.len() < 2 {
        return Err(Error::InvalidParams(
            "at least two code lengths are needed for a fit".into(),
        ));
    }
    let points = lengths
        .iter()
        .map(|&n| {
            let t = code_size(rate, n, rounding)?;
            if t < (s + l) as u64 {
                return Err(Error::InvalidParams(format!(
                    "N = {n} gives t = {t} < s + L = {}",
                    s + l
                )));
            }
            let spec = EnsembleSpec::new(n, t, q_weight, 0)?;
            let ln_p = bad_prob_ln(s, l, &spec)?.exact;
            let log2_prob = ln_p / std::f64::consts::LN_2;
            if !log2_prob.is_finite() {
                return Err(Error::NonFinite {
                    x: n as f64,
                    value: log2_prob,
                });
            }
            Ok(EmpiricalPoint {
                n,
                t,
                w: spec.w,
                log2_prob,
                exponent: -log2_prob / n as f64,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let xs: Vec<f64> = points.iter().map(|p| p.n as f64).collect();
    let ys: Vec<f64> = points.iter().map(|p| -p.log2_prob).collect();
    let m = xs.len() as f64;
    let mx = xs.iter().sum::<f64>() / m;
    let my = ys.iter().sum::<f64>() / m;
    let sxx: f64 = xs.iter().map(|x| (x - mx).powi(2)).sum();
    if sxx == 0.0 {
        return Err(Error::InvalidParams("code lengths must not all be equal".into()));
    }
    let sxy: f64 = xs.iter().zip(&ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    let slope = sxy / sxx;
    let intercept = my - slope * mx;
    let residuals = xs.iter().zip(&ys).map(|(x, y)| y - (intercept + slope * x)).collect();
    Ok(EmpiricalExponent {
        points,
        slope,
        intercept,
        residuals,
    })
}
