use clap::{Args, ValueEnum};
use ldlab_core::bounds::{capacity_at_q, rate_rc_limit};
use ldlab_core::{BoundResult, Bounds};

use crate::output::{Report, Value};
use crate::Failure;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum BoundKind {
    /// Capacity lower bound (independent of L).
    Capacity,
    /// Rate lower bound for list size L.
    Rate,
    /// Error exponent at rate R.
    Exponent,
    /// Critical rate: end of the straight initial segment of the exponent.
    Rcrit,
    /// Limit of the rate bound as L grows.
    RateInf,
}

#[derive(Debug, Args)]
pub struct BoundArgs {
    #[arg(value_enum)]
    pub kind: BoundKind,
    /// Strength: size of the tested column set.
    #[arg(long)]
    pub s: u32,
    /// List size.
    #[arg(long = "L", visible_alias = "l")]
    pub l: Option<u32>,
    /// Fix the relative column weight instead of optimizing over it.
    #[arg(long = "Q", visible_alias = "q")]
    pub q: Option<f64>,
    /// Rate, for `exponent`.
    #[arg(long = "R", visible_alias = "r")]
    pub r: Option<f64>,
    /// For `rcrit`: use the optimized exponent instead of the rate-optimal weight.
    #[arg(long)]
    pub global: bool,
}

const COLUMNS: [&str; 10] = [
    "kind",
    "s",
    "L",
    "R",
    "Q",
    "value",
    "inner",
    "branch",
    "evaluations",
    "formula",
];

struct Row {
    l: Option<u32>,
    r: Option<f64>,
    q: Option<f64>,
    value: f64,
    inner: Option<f64>,
    branch: Option<&'static str>,
    evaluations: Option<usize>,
    formula: &'static str,
}

impl Row {
    fn optimized(l: Option<u32>, r: Option<f64>, b: BoundResult, formula: &'static str) -> Self {
        Row {
            l,
            r,
            q: b.argmax_q,
            value: b.value,
            inner: b.inner,
            branch: None,
            evaluations: Some(b.diagnostics.evaluations),
            formula,
        }
    }
}

fn need<T>(x: Option<T>, flag: &str, kind: &str) -> Result<T, Failure> {
    x.ok_or_else(|| Failure::Usage(format!("`bound {kind}` requires {flag}")))
}

pub fn bound(b: &Bounds, a: &BoundArgs) -> Result<Report, Failure> {
    let kind = a.kind.to_possible_value().unwrap().get_name().to_owned();
    let row = match a.kind {
        BoundKind::Capacity => match a.q {
            Some(q) => Row {
                l: None,
                r: None,
                q: Some(q),
                value: capacity_at_q(a.s, q)?,
                inner: Some(1.0 - (1.0 - q).powi(a.s as i32)),
                branch: None,
                evaluations: None,
                formula: "h(Q) - q0 h(Q/q0), q0 = 1-(1-Q)^s",
            },
            None => Row::optimized(None, None, b.capacity(a.s)?, "max_Q h(Q) - q0 h(Q/q0), q0 = 1-(1-Q)^s"),
        },
        BoundKind::Rate => {
            let l = need(a.l, "--L", &kind)?;
            match a.q {
                Some(q) => Row {
                    l: Some(l),
                    r: None,
                    q: Some(q),
                    value: b.list_exponent(a.s, l, q)? / (a.s + l - 1) as f64,
                    inner: Some(b.stationary_y(a.s, l, q)?),
                    branch: None,
                    evaluations: None,
                    formula: "A_L(s,Q) / (s+L-1)",
                },
                None => Row::optimized(Some(l), None, b.rate_rc(a.s, l)?, "max_Q A_L(s,Q) / (s+L-1)"),
            }
        }
        BoundKind::Exponent => {
            let l = need(a.l, "--L", &kind)?;
            let r = need(a.r, "--R", &kind)?;
            match a.q {
                Some(q) => {
                    let p = b.exponent_point(a.s, l, r, q)?;
                    Row {
                        l: Some(l),
                        r: Some(r),
                        q: Some(q),
                        value: p.value,
                        inner: Some(p.q_min),
                        branch: Some(p.branch.as_str()),
                        evaluations: None,
                        formula: "E_L(s,R,Q) = min_q [A(s,Q,q) + L [h(Q) - q h(Q/q) - R]^+]",
                    }
                }
                None => {
                    let best = b.exponent(a.s, l, r)?;
                    let q = best.argmax_q.unwrap();
                    let p = b.exponent_point(a.s, l, r, q)?;
                    let mut row = Row::optimized(Some(l), Some(r), best, "max_Q E_L(s,R,Q)");
                    row.inner = Some(p.q_min);
                    row.branch = Some(p.branch.as_str());
                    row
                }
            }
        }
        BoundKind::Rcrit => {
            let l = need(a.l, "--L", &kind)?;
            if a.global {
                if a.q.is_some() {
                    return Err(Failure::Usage("--global and --Q are mutually exclusive".into()));
                }
                Row::optimized(
                    Some(l),
                    None,
                    b.r_critical(a.s, l)?,
                    "largest R with max_Q E_L(s,R,Q) = (s+L-1) R_L - L R",
                )
            } else {
                let q = match a.q {
                    Some(q) => q,
                    None => b.rate_rc(a.s, l)?.argmax_q.unwrap(),
                };
                let q2 = b.q2_minimizer(a.s, l, q)?.q;
                Row {
                    l: Some(l),
                    r: None,
                    q: Some(q),
                    value: b.r_critical_at_q(a.s, l, q)?,
                    inner: Some(q2),
                    branch: None,
                    evaluations: None,
                    formula: "h(Q) - q2 h(Q/q2), q2 the minimizer of the list objective",
                }
            }
        }
        BoundKind::RateInf => Row {
            l: None,
            r: None,
            q: None,
            value: rate_rc_limit(a.s)?,
            inner: None,
            branch: None,
            evaluations: None,
            formula: "log2[(s-1)^(s-1) / s^s + 1]",
        },
    };
    let mut report = Report::new("bound", &COLUMNS);
    report.push(vec![
        kind.into(),
        a.s.into(),
        row.l.map_or(Value::Null, Value::from),
        row.r.into(),
        row.q.into(),
        row.value.into(),
        row.inner.into(),
        row.branch.map_or(Value::Null, Value::from),
        row.evaluations.map_or(Value::Null, Value::from),
        row.formula.into(),
    ]);
    Ok(report)
}
