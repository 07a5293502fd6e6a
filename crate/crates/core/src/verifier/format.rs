//! Code files.
//!
//! Text form: a header line `N t`, then `N` lines of exactly `t` characters
//! from `{0, 1}`. Blank lines after the last row are ignored.
//!
//! JSON form: `{"n": N, "t": t, "rows": ["0101...", ...]}`.

use super::code::{BinaryCode, CodeFile};
use crate::error::{Error, Result};

fn parse_err(line: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        line,
        message: message.into(),
    }
}

fn parse_row(row: &str, t: usize, line: usize) -> Result<Vec<bool>> {
    let bits = row
        .chars()
        .enumerate()
        .map(|(i, c)| match c {
            '0' => Ok(false),
            '1' => Ok(true),
            other => Err(parse_err(
                line,
                format!("non-binary character {other:?} at column {}", i + 1),
            )),
        })
        .collect::<Result<Vec<_>>>()?;
    if bits.len() != t {
        return Err(parse_err(line, format!("row has {} entries, expected {t}", bits.len())));
    }
    Ok(bits)
}

pub fn parse_code_text(input: &str) -> Result<BinaryCode> {
    let mut lines = input.lines().enumerate().map(|(i, l)| (i + 1, l.trim_end()));
    let (hline, header) = lines
        .by_ref()
        .find(|(_, l)| !l.trim().is_empty())
        .ok_or_else(|| parse_err(1, "empty input"))?;
    let dims: Vec<&str> = header.split_whitespace().collect();
    let [n, t] = dims[..] else {
        return Err(parse_err(hline, "header must be \"N t\""));
    };
    let n: usize = n
        .parse()
        .map_err(|_| parse_err(hline, format!("invalid row count {n:?}")))?;
    let t: usize = t
        .parse()
        .map_err(|_| parse_err(hline, format!("invalid column count {t:?}")))?;
    let mut rows = Vec::with_capacity(n);
    let mut last = hline;
    for (line, text) in lines {
        if rows.len() == n {
            if !text.trim().is_empty() {
                return Err(parse_err(line, format!("unexpected content after {n} rows")));
            }
            continue;
        }
        rows.push(parse_row(text, t, line)?);
        last = line;
    }
    if rows.len() < n {
        return Err(parse_err(last + 1, format!("expected {n} rows, found {}", rows.len())));
    }
    build(n, t, &rows)
}

pub fn parse_code_json(input: &str) -> Result<BinaryCode> {
    let file: CodeFile = serde_json::from_str(input).map_err(|e| parse_err(e.line(), e.to_string()))?;
    if file.rows.len() != file.n {
        return Err(parse_err(
            1,
            format!("\"n\" is {} but {} rows are given", file.n, file.rows.len()),
        ));
    }
    // JSON rows carry no useful line numbers; report the row index instead
    let rows = file
        .rows
        .iter()
        .enumerate()
        .map(|(i, r)| {
            parse_row(r, file.t, i + 1).map_err(|e| match e {
                Error::Parse { message, .. } => parse_err(1, format!("row {}: {message}", i + 1)),
                other => other,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    build(file.n, file.t, &rows)
}

/// Detects the format from the first non-blank character.
pub fn parse_code(input: &str) -> Result<BinaryCode> {
    if input.trim_start().starts_with('{') {
        parse_code_json(input)
    } else {
        parse_code_text(input)
    }
}

fn build(n: usize, t: usize, rows: &[Vec<bool>]) -> Result<BinaryCode> {
    if n == 0 || t == 0 {
        return Err(parse_err(1, "N and t must be positive"));
    }
    BinaryCode::from_rows(rows)
}

pub fn write_code_text(code: &BinaryCode) -> String {
    let mut out = format!("{} {}\n", code.n(), code.t());
    for row in code.row_strings() {
        out.push_str(&row);
        out.push('\n');
    }
    out
}

pub fn write_code_json(code: &BinaryCode) -> String {
    serde_json::to_string_pretty(&CodeFile::from(code)).expect("plain data serializes")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn line_of(e: Error) -> usize {
        match e {
            Error::Parse { line, .. } => line,
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn text_round_trip() {
        let src = "4 4\n1010\n1100\n0110\n0001\n\n";
        let code = parse_code_text(src).unwrap();
        assert_eq!((code.n(), code.t()), (4, 4));
        assert_eq!(write_code_text(&code), src.trim_end().to_owned() + "\n");
        let again = parse_code(&write_code_json(&code)).unwrap();
        assert_eq!(again, code);
    }

    #[test]
    fn text_errors_carry_lines() {
        assert_eq!(line_of(parse_code_text("2 3\n101\n10\n").unwrap_err()), 3);
        assert_eq!(line_of(parse_code_text("2 3\n101\n1x1\n").unwrap_err()), 3);
        assert_eq!(line_of(parse_code_text("\n2 3 4\n").unwrap_err()), 2);
        assert_eq!(line_of(parse_code_text("3 2\n10\n01\n").unwrap_err()), 4);
        assert_eq!(line_of(parse_code_text("1 2\n10\n01\n").unwrap_err()), 3);
        assert_eq!(line_of(parse_code_text("a 2\n").unwrap_err()), 1);
        assert!(parse_code_text("").is_err());
        assert!(parse_code_text("0 0\n").is_err());
    }

    #[test]
    fn json_errors() {
        let ok = r#"{"n": 2, "t": 2, "rows": ["10", "01"]}"#;
        assert_eq!(parse_code(ok).unwrap(), BinaryCode::identity(2));
        assert!(parse_code_json(r#"{"n": 2, "t": 2, "rows": ["10", "0"]}"#).is_err());
        assert!(parse_code_json(r#"{"n": 3, "t": 2, "rows": ["10", "01"]}"#).is_err());
        assert!(parse_code_json(r#"{"n": 2, "t": 2, "rows": ["10", "02"]}"#).is_err());
        let e = parse_code_json("{\n\"n\": 2,\n\"t\": }").unwrap_err();
        assert_eq!(line_of(e), 3);
    }
}
