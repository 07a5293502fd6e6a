use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

const WORD_BITS: usize = 64;

/// A binary column of fixed length, packed into 64-bit words.
///
/// Bits past `len` in the last word are always zero, so word-wise
/// comparisons are exact.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Column {
    words: Vec<u64>,
    len: usize,
}

impl Column {
    pub fn zeros(len: usize) -> Self {
        Column {
            words: vec![0; len.div_ceil(WORD_BITS)],
            len,
        }
    }

    pub fn ones(len: usize) -> Self {
        let mut c = Column::zeros(len);
        for i in 0..len {
            c.set(i, true);
        }
        c
    }

    pub fn from_bits(bits: &[bool]) -> Self {
        let mut c = Column::zeros(bits.len());
        for (i, &b) in bits.iter().enumerate() {
            c.set(i, b);
        }
        c
    }

    /// Column with ones exactly at `rows`.
    pub fn from_support(len: usize, rows: &[usize]) -> Self {
        let mut c = Column::zeros(len);
        for &r in rows {
            c.set(r, true);
        }
        c
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.len
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    #[inline]
    pub fn get(&self, i: usize) -> bool {
        assert!(i < self.len, "row {i} out of range for length {}", self.len);
        self.words[i / WORD_BITS] >> (i % WORD_BITS) & 1 == 1
    }

    #[inline]
    pub fn set(&mut self, i: usize, value: bool) {
        assert!(i < self.len, "row {i} out of range for length {}", self.len);
        let mask = 1u64 << (i % WORD_BITS);
        if value {
            self.words[i / WORD_BITS] |= mask;
        } else {
            self.words[i / WORD_BITS] &= !mask;
        }
    }

    pub fn weight(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn to_bits(&self) -> Vec<bool> {
        (0..self.len).map(|i| self.get(i)).collect()
    }

    /// `self |= other`; lengths must match.
    #[inline]
    pub(crate) fn or_assign(&mut self, other: &Column) {
        debug_assert_eq!(self.len, other.len);
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a |= *b;
        }
    }

    pub(crate) fn clear(&mut self) {
        self.words.iter_mut().for_each(|w| *w = 0);
    }

    /// `self ⪰ other` without the length check.
    #[inline]
    pub(crate) fn covers_unchecked(&self, other: &Column) -> bool {
        self.words.iter().zip(&other.words).all(|(a, b)| b & !a == 0)
    }
}

/// `u` covers `v` (`u ⪰ v`) iff `u ∨ v = u`.
pub fn covers(u: &Column, v: &Column) -> Result<bool> {
    if u.len != v.len {
        return Err(Error::LengthMismatch {
            left: u.len,
            right: v.len,
        });
    }
    Ok(u.covers_unchecked(v))
}

/// An `N × t` binary code stored column by column.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BinaryCode {
    n: usize,
    columns: Vec<Column>,
    constant_weight: Option<usize>,
}

impl BinaryCode {
    /// Builds a code from its columns, all of which must have length `n`.
    pub fn from_columns(n: usize, columns: Vec<Column>) -> Result<Self> {
        if let Some(c) = columns.iter().find(|c| c.len() != n) {
            return Err(Error::LengthMismatch {
                left: n,
                right: c.len(),
            });
        }
        let first = columns.first().map(Column::weight);
        let constant_weight = first.filter(|&w| columns.iter().all(|c| c.weight() == w));
        Ok(BinaryCode {
            n,
            columns,
            constant_weight,
        })
    }

    /// Builds a code from `N` rows of `t` bits each.
    pub fn from_rows(rows: &[Vec<bool>]) -> Result<Self> {
        let n = rows.len();
        let t = rows.first().map_or(0, Vec::len);
        if let Some(r) = rows.iter().find(|r| r.len() != t) {
            return Err(Error::LengthMismatch {
                left: t,
                right: r.len(),
            });
        }
        let mut columns = vec![Column::zeros(n); t];
        for (i, row) in rows.iter().enumerate() {
            for (j, &b) in row.iter().enumerate() {
                columns[j].set(i, b);
            }
        }
        BinaryCode::from_columns(n, columns)
    }

    /// The `t × t` identity code.
    pub fn identity(t: usize) -> Self {
        let columns = (0..t).map(|j| Column::from_support(t, &[j])).collect();
        BinaryCode::from_columns(t, columns).expect("equal lengths")
    }

    pub fn all_ones(n: usize, t: usize) -> Self {
        BinaryCode::from_columns(n, vec![Column::ones(n); t]).expect("equal lengths")
    }

    /// Number of rows `N`.
    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    /// Number of columns `t`.
    #[inline]
    pub fn t(&self) -> usize {
        self.columns.len()
    }

    #[inline]
    pub fn column(&self, j: usize) -> &Column {
        &self.columns[j]
    }

    pub fn columns(&self) -> &[Column] {
        &self.columns
    }

    pub fn get(&self, row: usize, col: usize) -> bool {
        self.columns[col].get(row)
    }

    pub fn weights(&self) -> Vec<usize> {
        self.columns.iter().map(Column::weight).collect()
    }

    /// The common column weight, if every column has the same weight.
    pub fn constant_weight(&self) -> Option<usize> {
        self.constant_weight
    }

    /// Rows as strings over `{0, 1}`.
    pub fn row_strings(&self) -> Vec<String> {
        (0..self.n)
            .map(|i| self.columns.iter().map(|c| if c.get(i) { '1' } else { '0' }).collect())
            .collect()
    }

    /// Reorders columns: column `j` of the result is column `perm[j]` here.
    pub fn permute_columns(&self, perm: &[usize]) -> Result<Self> {
        check_permutation(perm, self.t())?;
        let columns = perm.iter().map(|&j| self.columns[j].clone()).collect();
        BinaryCode::from_columns(self.n, columns)
    }

    /// Reorders rows: row `i` of the result is row `perm[i]` here.
    pub fn permute_rows(&self, perm: &[usize]) -> Result<Self> {
        check_permutation(perm, self.n)?;
        let columns = self
            .columns
            .iter()
            .map(|c| {
                let mut out = Column::zeros(self.n);
                for (i, &src) in perm.iter().enumerate() {
                    out.set(i, c.get(src));
                }
                out
            })
            .collect();
        BinaryCode::from_columns(self.n, columns)
    }
}

fn check_permutation(perm: &[usize], len: usize) -> Result<()> {
    let mut seen = vec![false; len];
    if perm.len() != len {
        return Err(Error::LengthMismatch {
            left: len,
            right: perm.len(),
        });
    }
    for &p in perm {
        if p >= len || std::mem::replace(&mut seen[p], true) {
            return Err(Error::InvalidParams(format!("not a permutation of 0..{len}")));
        }
    }
    Ok(())
}

/// On-disk JSON form of a code.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CodeFile {
    pub n: usize,
    pub t: usize,
    pub rows: Vec<String>,
}

impl From<&BinaryCode> for CodeFile {
    fn from(code: &BinaryCode) -> Self {
        CodeFile {
            n: code.n(),
            t: code.t(),
            rows: code.row_strings(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn col(s: &str) -> Column {
        Column::from_bits(&s.chars().map(|c| c == '1').collect::<Vec<_>>())
    }

    #[test]
    fn covers_examples() {
        assert!(covers(&col("1101"), &col("0100")).unwrap());
        assert!(!covers(&col("1101"), &col("0010")).unwrap());
        assert!(covers(&col("1101"), &col("1101")).unwrap());
        assert!(covers(&col("0000"), &col("0000")).unwrap());
        assert!(matches!(
            covers(&col("110"), &col("1100")),
            Err(Error::LengthMismatch { left: 3, right: 4 })
        ));
    }

    #[test]
    fn multiword_columns() {
        let mut u = Column::zeros(130);
        u.set(0, true);
        u.set(64, true);
        u.set(129, true);
        assert_eq!(u.weight(), 3);
        assert!(covers(&u, &Column::from_support(130, &[129])).unwrap());
        assert!(!covers(&u, &Column::from_support(130, &[128])).unwrap());
        assert_eq!(Column::ones(130).weight(), 130);
        assert_eq!(u.to_bits().iter().filter(|&&b| b).count(), 3);
    }

    #[test]
    fn code_shapes() {
        let rows = vec![vec![true, false, true], vec![false, true, true]];
        let code = BinaryCode::from_rows(&rows).unwrap();
        assert_eq!((code.n(), code.t()), (2, 3));
        assert_eq!(code.weights(), vec![1, 1, 2]);
        assert_eq!(code.constant_weight(), None);
        assert_eq!(code.row_strings(), vec!["101", "011"]);
        assert_eq!(BinaryCode::identity(4).constant_weight(), Some(1));
        assert!(BinaryCode::from_rows(&[vec![true], vec![true, false]]).is_err());
    }

    #[test]
    fn permutations() {
        let code = BinaryCode::from_rows(&[vec![true, false, false], vec![true, true, false]]).unwrap();
        let p = code.permute_columns(&[2, 0, 1]).unwrap();
        assert_eq!(p.row_strings(), vec!["010", "011"]);
        let r = code.permute_rows(&[1, 0]).unwrap();
        assert_eq!(r.row_strings(), vec!["110", "100"]);
        assert!(code.permute_columns(&[0, 0, 1]).is_err());
        assert!(code.permute_rows(&[0]).is_err());
    }
}
