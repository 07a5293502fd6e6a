use std::str::FromStr;

use clap::Args;
use ldlab_core::Bounds;

use crate::output::Report;
use crate::Failure;

/// `lo:hi:n`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RateGrid {
    pub lo: f64,
    pub hi: f64,
    pub n: usize,
}

impl FromStr for RateGrid {
    type Err = String;

    fn from_str(text: &str) -> Result<Self, String> {
        let parts: Vec<&str> = text.split(':').collect();
        let [lo, hi, n] = parts[..] else {
            return Err(format!("rate grid `{text}` is not of the form lo:hi:n"));
        };
        let lo: f64 = lo.parse().map_err(|_| format!("bad lower rate `{lo}`"))?;
        let hi: f64 = hi.parse().map_err(|_| format!("bad upper rate `{hi}`"))?;
        let n: usize = n.parse().map_err(|_| format!("bad point count `{n}`"))?;
        if !(lo >= 0.0 && lo <= hi && hi.is_finite()) || n == 0 {
            return Err(format!("rate grid `{text}` needs 0 <= lo <= hi and n >= 1"));
        }
        Ok(RateGrid { lo, hi, n })
    }
}

#[derive(Debug, Args)]
pub struct CurveArgs {
    #[arg(long)]
    pub s: u32,
    #[arg(long = "L", visible_alias = "l")]
    pub l: u32,
    /// Fixed relative column weight; omit to optimize it at every rate.
    #[arg(long = "Q", visible_alias = "q", conflicts_with = "optimize")]
    pub q: Option<f64>,
    /// Optimize the weight at every rate (the default without --Q).
    #[arg(long)]
    pub optimize: bool,
    /// Rates as `lo:hi:n`, endpoints included.
    #[arg(long, default_value = "0:0.5:51")]
    pub r_grid: RateGrid,
}

const COLUMNS: [&str; 7] = ["R", "E", "branch", "slope", "Q", "r_critical", "capacity"];

pub fn curve(b: &Bounds, a: &CurveArgs) -> Result<Report, Failure> {
    let g = a.r_grid;
    let curve = b.exponent_curve(a.s, a.l, a.q, g.lo, g.hi, g.n)?;
    let mut report = Report::new("curve", &COLUMNS);
    report.meta("s", a.s);
    report.meta("L", a.l);
    for p in &curve.samples {
        report.push(vec![
            p.rate.into(),
            p.exponent.into(),
            p.branch.as_str().into(),
            p.slope.into(),
            p.q_weight.into(),
            curve.r_critical.into(),
            curve.capacity.into(),
        ]);
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn grids() {
        assert_eq!(
            "0:0.4:5".parse::<RateGrid>().unwrap(),
            RateGrid { lo: 0.0, hi: 0.4, n: 5 }
        );
        assert!("0.4:0:5".parse::<RateGrid>().is_err());
        assert!("0:1".parse::<RateGrid>().is_err());
        assert!("0:1:0".parse::<RateGrid>().is_err());
    }
}
