use std::fs;
use std::io::{self, Read};
use std::path::PathBuf;

use clap::{Args, ValueEnum};
use ldlab_core::verifier::{count_bad_sampled, count_bad_with_budget, parse_code, DEFAULT_SUBSET_BUDGET};
use ldlab_core::Error;

use crate::output::{Report, Value};
use crate::{Failure, Outcome};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum VerifyMode {
    /// Enumerate every s-subset.
    Exact,
    /// Estimate the bad fraction from uniformly sampled s-subsets.
    Sampled,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    /// Code file (text or JSON); `-` reads stdin.
    pub file: PathBuf,
    #[arg(long)]
    pub s: u32,
    #[arg(long = "L", visible_alias = "l")]
    pub l: u32,
    /// Largest acceptable fraction of bad s-subsets.
    #[arg(long, default_value_t = 0.0)]
    pub epsilon: f64,
    #[arg(long, value_enum, default_value = "exact")]
    pub mode: VerifyMode,
    /// Subsets drawn in sampled mode.
    #[arg(long, default_value_t = 100_000)]
    pub samples: u64,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Largest number of subsets exact mode will enumerate.
    #[arg(long, default_value_t = DEFAULT_SUBSET_BUDGET)]
    pub budget: u64,
}

const COLUMNS: [&str; 14] = [
    "s",
    "L",
    "N",
    "t",
    "subsets",
    "examined",
    "bad",
    "good",
    "epsilon",
    "stderr",
    "threshold",
    "pass",
    "witness_subset",
    "witness_covered",
];

fn read_input(path: &PathBuf) -> io::Result<String> {
    if path.as_os_str() == "-" {
        let mut text = String::new();
        io::stdin().read_to_string(&mut text)?;
        Ok(text)
    } else {
        fs::read_to_string(path)
    }
}

fn indices(v: &[usize]) -> Value {
    v.iter().map(usize::to_string).collect::<Vec<_>>().join(" ").into()
}

pub fn verify(a: &VerifyArgs) -> Result<Outcome, Failure> {
    if !(0.0..1.0).contains(&a.epsilon) {
        return Err(Failure::Usage(format!(
            "--epsilon must lie in [0, 1), got {}",
            a.epsilon
        )));
    }
    let name = a.file.display();
    let text = read_input(&a.file).map_err(|e| Failure::Usage(format!("{name}: {e}")))?;
    let code = parse_code(&text).map_err(|e| Failure::Usage(format!("{name}: {e}")))?;
    let report = match a.mode {
        VerifyMode::Exact => count_bad_with_budget(&code, a.s, a.l, a.budget).map_err(|e| match e {
            Error::BudgetExceeded { .. } => Failure::Usage(format!("{e}; use --mode sampled or raise --budget")),
            e => e.into(),
        })?,
        VerifyMode::Sampled => count_bad_sampled(&code, a.s, a.l, a.samples, a.seed)?,
    };
    let passed = report.epsilon <= a.epsilon;
    let mut out = Report::new("verify", &COLUMNS);
    out.push(vec![
        a.s.into(),
        a.l.into(),
        code.n().into(),
        code.t().into(),
        report.subsets.into(),
        report.examined.into(),
        report.bad.into(),
        report.good.into(),
        report.epsilon.into(),
        report.stderr.into(),
        a.epsilon.into(),
        passed.into(),
        report.witness.as_ref().map_or(Value::Null, |w| indices(&w.subset)),
        report.witness.as_ref().map_or(Value::Null, |w| indices(&w.covered)),
    ]);
    Ok(Outcome { report: out, passed })
}
