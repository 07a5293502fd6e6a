use clap::{Args, ValueEnum};
use ldlab_core::ensemble::{bad_prob_ln, code_size, monte_carlo_bad_prob, SizeRounding};
use ldlab_core::{Bounds, EnsembleSpec};

use crate::output::{Report, Value};
use crate::Failure;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum SimMode {
    Exact,
    Mc,
    Both,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Rounding {
    Ceil,
    Floor,
}

#[derive(Debug, Args)]
pub struct SimulateArgs {
    #[arg(long)]
    pub s: u32,
    #[arg(long = "L", visible_alias = "l")]
    pub l: u32,
    /// Code length.
    #[arg(long = "N", visible_alias = "n")]
    pub n: usize,
    /// Code size.
    #[arg(long, required_unless_present = "r", conflicts_with = "r")]
    pub t: Option<u64>,
    /// Rate; the code size is 2^(RN), rounded by --rounding.
    #[arg(long = "R", visible_alias = "r")]
    pub r: Option<f64>,
    /// Relative column weight; the weight is floor(QN).
    #[arg(long = "Q", visible_alias = "q", required_unless_present = "w", conflicts_with = "w")]
    pub q: Option<f64>,
    /// Absolute column weight.
    #[arg(long)]
    pub w: Option<usize>,
    #[arg(long, value_enum, default_value = "exact")]
    pub mode: SimMode,
    /// Monte Carlo trials.
    #[arg(long, default_value_t = 100_000)]
    pub trials: u64,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, value_enum, default_value = "ceil")]
    pub rounding: Rounding,
}

const COLUMNS: [&str; 17] = [
    "s",
    "L",
    "N",
    "w",
    "t",
    "Q",
    "R",
    "exact",
    "union_bound",
    "lemma_lower",
    "mc_estimate",
    "mc_stderr",
    "mc_hits",
    "trials",
    "seed",
    "exponent",
    "predicted",
];

pub fn simulate(b: &Bounds, a: &SimulateArgs) -> Result<Report, Failure> {
    let t = match (a.t, a.r) {
        (Some(t), _) => t,
        (None, Some(r)) => {
            let rounding = match a.rounding {
                Rounding::Ceil => SizeRounding::Ceil,
                Rounding::Floor => SizeRounding::Floor,
            };
            code_size(r, a.n, rounding)?
        }
        (None, None) => unreachable!("clap requires --t or --R"),
    };
    let spec = match (a.q, a.w) {
        (Some(q), _) => EnsembleSpec::new(a.n, t, q, a.seed)?,
        (None, Some(w)) => EnsembleSpec::with_weight(a.n, t, w, a.seed)?,
        (None, None) => unreachable!("clap requires --Q or --w"),
    };
    if t < (a.s + a.l) as u64 {
        return Err(Failure::Usage(format!(
            "code size t = {t} is smaller than s + L = {}",
            a.s + a.l
        )));
    }
    let rate = (t as f64).log2() / a.n as f64;
    let probs = bad_prob_ln(a.s, a.l, &spec)?;
    let mc = match a.mode {
        SimMode::Exact => None,
        SimMode::Mc | SimMode::Both => Some(monte_carlo_bad_prob(a.s, a.l, &spec, a.trials)?),
    };
    let exact = match a.mode {
        SimMode::Mc => Value::Null,
        _ => probs.exact().into(),
    };
    let exponent = b.exponent_at_q(a.s, a.l, rate, spec.q_weight)?;
    let predicted = (-(a.n as f64) * exponent).exp2();
    let mut report = Report::new("simulate", &COLUMNS);
    report.push(vec![
        a.s.into(),
        a.l.into(),
        a.n.into(),
        spec.w.into(),
        t.into(),
        spec.q_weight.into(),
        rate.into(),
        exact,
        probs.union_bound().into(),
        probs.lemma_lower().into(),
        mc.map(|m| m.estimate).into(),
        mc.map(|m| m.stderr).into(),
        mc.map_or(Value::Null, |m| m.hits.into()),
        mc.map_or(Value::Null, |m| m.trials.into()),
        a.seed.into(),
        exponent.into(),
        predicted.into(),
    ]);
    Ok(report)
}
