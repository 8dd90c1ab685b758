//! Bundled reference eigenvalues (see `data/table1.txt`).

use crate::error::{Error, Result};

const TABLE1: &str = include_str!("../../data/table1.txt");

/// One published ground-state energy of `x^(2m) + lambda/x^(2n)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Table1Entry {
    pub m: u32,
    pub n: u32,
    /// `R` as printed.
    pub r: String,
    /// Energy as printed (decimal string).
    pub energy: String,
}

/// All 24 entries in canonical order: by `(m, n)`, then by decreasing `R`.
pub fn table1() -> Vec<Table1Entry> {
    parse_table(TABLE1).expect("bundled table is well formed")
}

pub fn parse_table(text: &str) -> Result<Vec<Table1Entry>> {
    let mut rows = Vec::new();
    for (k, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let cols: Vec<&str> = line.split_whitespace().collect();
        let bad = || Error::InvalidInput(format!("table line {}: {line:?}", k + 1));
        if cols.len() != 4 {
            return Err(bad());
        }
        rows.push(Table1Entry {
            m: cols[0].parse().map_err(|_| bad())?,
            n: cols[1].parse().map_err(|_| bad())?,
            r: cols[2].to_string(),
            energy: cols[3].to_string(),
        });
    }
    Ok(rows)
}
