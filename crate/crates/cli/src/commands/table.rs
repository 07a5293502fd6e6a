use std::str::FromStr;

use clap::Args;
use ldlab_core::{Bounds, TableRequest};

use crate::output::{Report, Value};
use crate::Failure;

pub const EXCLUDED_NOTE: &str = "excluded: requires external R̲₁(s)";

/// `all`, or a comma-separated list of `s:L` cells.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CellSelection {
    All,
    List(Vec<(u32, u32)>),
}

impl FromStr for CellSelection {
    type Err = String;

    fn from_str(text: &str) -> Result<Self, String> {
        if text == "all" {
            return Ok(CellSelection::All);
        }
        text.split(',')
            .map(|cell| {
                let (s, l) = cell
                    .split_once(':')
                    .ok_or_else(|| format!("cell `{cell}` is not of the form s:L"))?;
                let s: u32 = s.trim().parse().map_err(|_| format!("bad s in cell `{cell}`"))?;
                let l: u32 = l.trim().parse().map_err(|_| format!("bad L in cell `{cell}`"))?;
                if s == 0 || l == 0 {
                    return Err(format!("cell `{cell}`: s and L must be positive"));
                }
                Ok((s, l))
            })
            .collect::<Result<Vec<_>, _>>()
            .map(CellSelection::List)
    }
}

#[derive(Debug, Args)]
pub struct TableArgs {
    /// `all` (2 <= s, L <= 10 plus the capacity block) or cells such as `2:2,9:6`.
    #[arg(long, default_value = "all")]
    pub cells: CellSelection,
    /// Also compute the critical rate from the optimized exponent (slow).
    #[arg(long)]
    pub global_rcrit: bool,
}

const COLUMNS: [&str; 9] = [
    "block",
    "s",
    "L",
    "Q",
    "value",
    "r_critical",
    "r_critical_global",
    "q_rate_1",
    "note",
];

pub fn table1(b: &Bounds, a: &TableArgs) -> Result<Report, Failure> {
    let mut request = TableRequest {
        global_r_critical: a.global_rcrit,
        ..TableRequest::default()
    };
    if let CellSelection::List(cells) = &a.cells {
        request.cells = cells.clone();
        request.capacity_rows.clear();
    }
    let table = b.table(&request)?;
    let mut report = Report::new("table1", &COLUMNS);
    for cell in &table.cells {
        let row = match cell.values {
            Some(v) => vec![
                "cell".into(),
                cell.s.into(),
                cell.l.into(),
                v.q_opt.into(),
                v.rate.into(),
                v.r_critical.into(),
                v.r_critical_global.into(),
                Value::Null,
                Value::Null,
            ],
            None => vec![
                "cell".into(),
                cell.s.into(),
                cell.l.into(),
                Value::Null,
                Value::Null,
                Value::Null,
                Value::Null,
                Value::Null,
                EXCLUDED_NOTE.into(),
            ],
        };
        report.push(row);
    }
    for row in &table.capacity_rows {
        report.push(vec![
            "capacity".into(),
            row.s.into(),
            Value::Null,
            row.q_opt.into(),
            row.capacity.into(),
            row.r_critical_1.into(),
            Value::Null,
            row.q_rate_1.into(),
            Value::Null,
        ]);
    }
    Ok(report)
}
