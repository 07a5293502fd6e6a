use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::Bounds;
use crate::error::Result;

/// Cells with `L = 2` and `s >= 7`, where the best known bound comes from a
/// different construction and no optimal weight is tabulated.
pub fn is_excluded_cell(s: u32, l: u32) -> bool {
    l == 2 && s >= 7
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TableRequest {
    pub cells: Vec<(u32, u32)>,
    pub capacity_rows: Vec<u32>,
    /// Also compute the critical rate of the optimized exponent (slow).
    pub global_r_critical: bool,
}

impl Default for TableRequest {
    /// `2 <= s <= 10`, `2 <= L <= 10`, plus the capacity rows for the same `s`.
    fn default() -> Self {
        TableRequest {
            cells: (2..=10).flat_map(|s| (2..=10).map(move |l| (s, l))).collect(),
            capacity_rows: (2..=10).collect(),
            global_r_critical: false,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CellValues {
    /// Rate-optimal relative weight.
    pub q_opt: f64,
    pub rate: f64,
    /// Critical rate at the rate-optimal weight.
    pub r_critical: f64,
    pub r_critical_global: Option<f64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TableCell {
    pub s: u32,
    pub l: u32,
    /// `None` for excluded cells.
    pub values: Option<CellValues>,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CapacityRow {
    pub s: u32,
    pub capacity: f64,
    pub q_opt: f64,
    /// Critical rate for `L = 1` at the weight maximizing `A_1(s, Q)`.
    pub r_critical_1: f64,
    pub q_rate_1: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Table {
    pub cells: Vec<TableCell>,
    pub capacity_rows: Vec<CapacityRow>,
}

impl Bounds {
    pub fn table_cell(&self, s: u32, l: u32, global_r_critical: bool) -> Result<TableCell> {
        if is_excluded_cell(s, l) {
            return Ok(TableCell { s, l, values: None });
        }
        let rate = self.rate_rc(s, l)?;
        let q_opt = rate.argmax_q.expect("rate bound reports its argmax");
        let r_critical = self.r_critical_at_q(s, l, q_opt)?;
        let r_critical_global = if global_r_critical {
            Some(self.r_critical(s, l)?.value)
        } else {
            None
        };
        Ok(TableCell {
            s,
            l,
            values: Some(CellValues {
                q_opt,
                rate: rate.value,
                r_critical,
                r_critical_global,
            }),
        })
    }

    pub fn capacity_row(&self, s: u32) -> Result<CapacityRow> {
        let cap = self.capacity(s)?;
        let rate_1 = self.rate_rc(s, 1)?;
        let q_rate_1 = rate_1.argmax_q.expect("rate bound reports its argmax");
        Ok(CapacityRow {
            s,
            capacity: cap.value,
            q_opt: cap.argmax_q.expect("capacity reports its argmax"),
            r_critical_1: self.r_critical_at_q(s, 1, q_rate_1)?,
            q_rate_1,
        })
    }

    /// Evaluates every requested cell; cells are independent and computed in
    /// parallel.
    #[doc(alias = "table1")]
    pub fn table(&self, request: &TableRequest) -> Result<Table> {
        let cells = request
            .cells
            .par_iter()
            .map(|&(s, l)| self.table_cell(s, l, request.global_r_critical))
            .collect::<Result<Vec<_>>>()?;
        let capacity_rows = request
            .capacity_rows
            .par_iter()
            .map(|&s| self.capacity_row(s))
            .collect::<Result<Vec<_>>>()?;
        Ok(Table { cells, capacity_rows })
    }
}
