//! Sparse document-by-term matrix and its Matrix Market serialization.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Sparse matrix in coordinate form. Entries are stored row-major, columns
/// ascending within a row, and zeros are never stored.
#[derive(Debug, Clone, PartialEq)]
pub struct FeatureMatrix {
    pub n_rows: usize,
    pub columns: Vec<String>,
    pub entries: Vec<(usize, usize, f64)>,
}

/// Column and row labels written next to a `.mtx` file.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Sidecar {
    pub columns: Vec<String>,
    pub rows: Vec<usize>,
}

impl Sidecar {
    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::MalformedSidecar(e.to_string()))
    }
}

impl FeatureMatrix {
    pub fn empty(n_rows: usize) -> Self {
        FeatureMatrix {
            n_rows,
            columns: Vec::new(),
            entries: Vec::new(),
        }
    }

    /// Builds a matrix, sorting entries and checking for duplicates, bad
    /// indices and non-finite values. Zero entries are dropped.
    pub fn from_entries(
        n_rows: usize,
        columns: Vec<String>,
        mut entries: Vec<(usize, usize, f64)>,
    ) -> Result<Self> {
        entries.retain(|e| e.2 != 0.0);
        entries.sort_by_key(|&(r, c, _)| (r, c));
        for w in entries.windows(2) {
            if (w[0].0, w[0].1) == (w[1].0, w[1].1) {
                return Err(Error::MalformedMatrix {
                    line: 0,
                    message: format!("duplicate entry ({}, {})", w[0].0 + 1, w[0].1 + 1),
                });
            }
        }
        if let Some(&(r, c, v)) = entries
            .iter()
            .find(|&&(r, c, v)| r >= n_rows || c >= columns.len() || !v.is_finite())
        {
            return Err(Error::MalformedMatrix {
                line: 0,
                message: format!(
                    "entry ({}, {}) = {v} out of range or not finite",
                    r + 1,
                    c + 1
                ),
            });
        }
        let mut seen = std::collections::HashSet::new();
        if let Some(dup) = columns.iter().find(|c| !seen.insert(c.as_str())) {
            return Err(Error::ColumnCollision(dup.clone()));
        }
        Ok(FeatureMatrix {
            n_rows,
            columns,
            entries,
        })
    }

    pub fn n_cols(&self) -> usize {
        self.columns.len()
    }

    pub fn nnz(&self) -> usize {
        self.entries.len()
    }

    pub fn get(&self, row: usize, col: usize) -> f64 {
        self.entries
            .binary_search_by_key(&(row, col), |&(r, c, _)| (r, c))
            .map_or(0.0, |i| self.entries[i].2)
    }

    /// Dense copy of column `col`.
    pub fn column(&self, col: usize) -> Vec<f64> {
        let mut out = vec![0.0; self.n_rows];
        for &(r, c, v) in &self.entries {
            if c == col {
                out[r] = v;
            }
        }
        out
    }

    pub fn to_dense(&self) -> Vec<Vec<f64>> {
        let mut out = vec![vec![0.0; self.n_cols()]; self.n_rows];
        for &(r, c, v) in &self.entries {
            out[r][c] = v;
        }
        out
    }

    pub fn to_matrix_market(&self) -> String {
        let mut out = String::with_capacity(64 + self.entries.len() * 24);
        out.push_str("%%MatrixMarket matrix coordinate real general\n");
        let _ = writeln!(out, "{} {} {}", self.n_rows, self.n_cols(), self.nnz());
        for &(r, c, v) in &self.entries {
            let _ = writeln!(out, "{} {} {}", r + 1, c + 1, v);
        }
        out
    }

    /// Parses a coordinate real (or integer) general Matrix Market file.
    /// Without column labels, columns are named by their 1-based index.
    pub fn from_matrix_market(text: &str, columns: Option<Vec<String>>) -> Result<Self> {
        let bad = |line: usize, message: &str| Error::MalformedMatrix {
            line,
            message: message.to_owned(),
        };
        let mut lines = text.lines().enumerate().map(|(i, l)| (i + 1, l.trim()));
        let (_, header) = lines.next().ok_or_else(|| bad(1, "empty input"))?;
        let header_lc = header.to_lowercase();
        let fields: Vec<&str> = header_lc.split_whitespace().collect();
        if fields.len() != 5
            || fields[0] != "%%matrixmarket"
            || fields[1] != "matrix"
            || fields[2] != "coordinate"
            || !(fields[3] == "real" || fields[3] == "integer")
            || fields[4] != "general"
        {
            return Err(bad(
                1,
                "expected `%%MatrixMarket matrix coordinate real general`",
            ));
        }
        let mut body = lines.filter(|(_, l)| !l.is_empty() && !l.starts_with('%'));
        let (size_line, size) = body.next().ok_or_else(|| bad(2, "missing size line"))?;
        let dims: Vec<usize> = size
            .split_whitespace()
            .map(str::parse)
            .collect::<std::result::Result<_, _>>()
            .map_err(|_| bad(size_line, "invalid size line"))?;
        let [n_rows, n_cols, nnz] = dims[..] else {
            return Err(bad(
                size_line,
                "size line needs rows, columns and entry count",
            ));
        };
        let columns = match columns {
            Some(c) if c.len() != n_cols => {
                return Err(bad(
                    size_line,
                    &format!("{} column labels for {n_cols} columns", c.len()),
                ))
            }
            Some(c) => c,
            None => (1..=n_cols).map(|j| j.to_string()).collect(),
        };
        let mut entries = Vec::with_capacity(nnz);
        for (line, l) in body {
            let parts: Vec<&str> = l.split_whitespace().collect();
            if parts.len() != 3 {
                return Err(bad(line, "entry needs row, column and value"));
            }
            let r: usize = parts[0]
                .parse()
                .map_err(|_| bad(line, "invalid row index"))?;
            let c: usize = parts[1]
                .parse()
                .map_err(|_| bad(line, "invalid column index"))?;
            let v: f64 = parts[2].parse().map_err(|_| bad(line, "invalid value"))?;
            if r == 0 || c == 0 || r > n_rows || c > n_cols {
                return Err(bad(line, "index out of range"));
            }
            entries.push((r - 1, c - 1, v));
        }
        if entries.len() != nnz {
            return Err(bad(
                size_line,
                &format!("declared {nnz} entries, found {}", entries.len()),
            ));
        }
        Self::from_entries(n_rows, columns, entries)
    }

    pub fn sidecar(&self) -> Sidecar {
        Sidecar {
            columns: self.columns.clone(),
            rows: (0..self.n_rows).collect(),
        }
    }

    pub fn sidecar_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(&self.sidecar()).expect("sidecar serializes");
        s.push('\n');
        s
    }
}
