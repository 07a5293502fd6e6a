use std::io::{self, IsTerminal, Write};

use clap::ValueEnum;
use serde_json::{json, Map, Number, Value as Json};

/// Significant digits of every floating-point field.
pub const SIGNIFICANT_DIGITS: usize = 12;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Table,
    Csv,
    Json,
}

impl Format {
    /// Human-readable table on a terminal, CSV otherwise.
    pub fn resolve(requested: Option<Format>, to_file: bool) -> Format {
        match requested {
            Some(f) => f,
            None if !to_file && io::stdout().is_terminal() => Format::Table,
            None => Format::Csv,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum Value {
    Num(f64),
    Int(u64),
    Text(String),
    Bool(bool),
    Null,
}

impl From<f64> for Value {
    fn from(x: f64) -> Self {
        Value::Num(x)
    }
}

impl From<Option<f64>> for Value {
    fn from(x: Option<f64>) -> Self {
        x.map_or(Value::Null, Value::Num)
    }
}

impl From<u64> for Value {
    fn from(x: u64) -> Self {
        Value::Int(x)
    }
}

impl From<u32> for Value {
    fn from(x: u32) -> Self {
        Value::Int(x.into())
    }
}

impl From<usize> for Value {
    fn from(x: usize) -> Self {
        Value::Int(x as u64)
    }
}

impl From<bool> for Value {
    fn from(x: bool) -> Self {
        Value::Bool(x)
    }
}

impl From<&str> for Value {
    fn from(x: &str) -> Self {
        Value::Text(x.to_owned())
    }
}

impl From<String> for Value {
    fn from(x: String) -> Self {
        Value::Text(x)
    }
}

/// Rounds to [`SIGNIFICANT_DIGITS`] and returns the shortest decimal that
/// parses back to the rounded value.
pub fn round_sig(x: f64) -> f64 {
    if x == 0.0 || !x.is_finite() {
        return x;
    }
    format!("{:.*e}", SIGNIFICANT_DIGITS - 1, x).parse().unwrap_or(x)
}

fn format_num(x: f64) -> String {
    if x.is_nan() {
        "nan".into()
    } else if x.is_infinite() {
        if x > 0.0 { "inf" } else { "-inf" }.into()
    } else {
        format!("{}", round_sig(x))
    }
}

impl Value {
    fn text(&self) -> String {
        match self {
            Value::Num(x) => format_num(*x),
            Value::Int(n) => n.to_string(),
            Value::Text(s) => s.clone(),
            Value::Bool(b) => b.to_string(),
            Value::Null => String::new(),
        }
    }

    fn json(&self) -> Json {
        match self {
            // non-finite numbers have no JSON form
            Value::Num(x) => Number::from_f64(round_sig(*x)).map_or(Json::Null, Json::Number),
            Value::Int(n) => json!(n),
            Value::Text(s) => json!(s),
            Value::Bool(b) => json!(b),
            Value::Null => Json::Null,
        }
    }
}

/// Rows of one command plus scalar metadata that applies to all of them.
#[derive(Debug, Clone)]
pub struct Report {
    pub command: &'static str,
    pub columns: Vec<&'static str>,
    pub rows: Vec<Vec<Value>>,
    pub meta: Vec<(&'static str, Value)>,
}

impl Report {
    pub fn new(command: &'static str, columns: &[&'static str]) -> Self {
        Report {
            command,
            columns: columns.to_vec(),
            rows: Vec::new(),
            meta: Vec::new(),
        }
    }

    pub fn push(&mut self, row: Vec<Value>) {
        debug_assert_eq!(row.len(), self.columns.len());
        self.rows.push(row);
    }

    pub fn meta(&mut self, key: &'static str, value: impl Into<Value>) {
        self.meta.push((key, value.into()));
    }

    pub fn to_json(&self) -> Json {
        let rows: Vec<Json> = self
            .rows
            .iter()
            .map(|r| {
                let obj: Map<String, Json> = self
                    .columns
                    .iter()
                    .zip(r)
                    .map(|(c, v)| (c.to_string(), v.json()))
                    .collect();
                Json::Object(obj)
            })
            .collect();
        let mut top = Map::new();
        top.insert("command".into(), json!(self.command));
        for (k, v) in &self.meta {
            top.insert(k.to_string(), v.json());
        }
        top.insert("rows".into(), Json::Array(rows));
        Json::Object(top)
    }

    pub fn write(&self, format: Format, out: &mut dyn Write) -> io::Result<()> {
        match format {
            Format::Json => {
                serde_json::to_writer_pretty(&mut *out, &self.to_json())?;
                writeln!(out)
            }
            Format::Csv => {
                writeln!(out, "{}", self.columns.join(","))?;
                for row in &self.rows {
                    let cells: Vec<String> = row.iter().map(|v| csv_escape(&v.text())).collect();
                    writeln!(out, "{}", cells.join(","))?;
                }
                Ok(())
            }
            Format::Table => self.write_table(out),
        }
    }

    fn write_table(&self, out: &mut dyn Write) -> io::Result<()> {
        let cells: Vec<Vec<String>> = self.rows.iter().map(|r| r.iter().map(Value::text).collect()).collect();
        let widths: Vec<usize> = (0..self.columns.len())
            .map(|j| {
                cells
                    .iter()
                    .map(|r| r[j].chars().count())
                    .chain([self.columns[j].len()])
                    .max()
                    .unwrap()
            })
            .collect();
        let line = |items: Vec<&str>| {
            items
                .iter()
                .zip(&widths)
                .map(|(s, w)| format!("{s:>w$}"))
                .collect::<Vec<_>>()
                .join("  ")
        };
        writeln!(out, "{}", line(self.columns.clone()))?;
        for r in &cells {
            writeln!(out, "{}", line(r.iter().map(String::as_str).collect()))?;
        }
        for (k, v) in &self.meta {
            writeln!(out, "{k}: {}", v.text())?;
        }
        Ok(())
    }
}

fn csv_escape(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_owned()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rounding_keeps_twelve_digits() {
        assert_eq!(round_sig(0.383_161_007_123_456_7), 0.383_161_007_123);
        assert_eq!(round_sig(1.0 / 3.0).to_string(), "0.333333333333");
        assert_eq!(round_sig(-2.5e-20), -2.5e-20);
        assert_eq!(round_sig(0.0), 0.0);
        assert!(round_sig(f64::NAN).is_nan());
    }

    #[test]
    fn csv_and_json_agree() {
        let mut r = Report::new("demo", &["a", "b", "note"]);
        r.push(vec![Value::Num(0.1 + 0.2), Value::Int(3), "x, y".into()]);
        r.push(vec![Value::Num(f64::NEG_INFINITY), Value::Null, Value::Bool(true)]);
        r.meta("seed", 7u64);
        let mut csv = Vec::new();
        r.write(Format::Csv, &mut csv).unwrap();
        assert_eq!(
            String::from_utf8(csv).unwrap(),
            "a,b,note\n0.3,3,\"x, y\"\n-inf,,true\n"
        );
        let j = r.to_json();
        assert_eq!(j["rows"][0]["a"], json!(0.3));
        assert_eq!(j["rows"][1]["a"], Json::Null);
        assert_eq!(j["seed"], json!(7));
    }
}
