//! Finite logical matrices.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use super::SemanticsError;
use crate::syntax::{Connective, Formula, Name};

/// Carrier values are indices into `values`; binary tables are row-major with
/// the row given by the left argument.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Matrix {
    pub name: String,
    pub values: Vec<String>,
    pub designated: BTreeSet<usize>,
    pub tables: BTreeMap<Connective, Vec<usize>>,
}

pub type MatrixValuation = BTreeMap<Name, usize>;

impl Matrix {
    pub fn value_index(&self, label: &str) -> Option<usize> {
        self.values.iter().position(|v| v == label)
    }

    pub fn eval(&self, v: &MatrixValuation, f: &Formula) -> Result<usize, SemanticsError> {
        if let Formula::Atom(a) = f {
            return v.get(a).copied().ok_or_else(|| SemanticsError::MissingAtom(a.to_string()));
        }
        if let Formula::Meta(m) = f {
            return Err(SemanticsError::Unsupported(format!("metavariable `{m}`")));
        }
        let c = f.connective().expect("non-leaf formula");
        let table = self.tables.get(&c).ok_or(SemanticsError::MissingTable(c.symbol()))?;
        let args = f.children().into_iter().map(|a| self.eval(v, a)).collect::<Result<Vec<_>, _>>()?;
        let n = self.values.len();
        Ok(match args.as_slice() {
            [] => table[0],
            [a] => table[*a],
            [a, b] => table[a * n + b],
            _ => unreachable!("connectives have arity at most 2"),
        })
    }

    pub fn is_designated(&self, value: usize) -> bool {
        self.designated.contains(&value)
    }

    /// The first valuation (atoms in name order, values in carrier order,
    /// earlier atoms varying slowest) at which `f` is not designated.
    pub fn countermodel_search(&self, f: &Formula) -> Result<Option<MatrixValuation>, SemanticsError> {
        let atoms: Vec<Name> = f.atoms().into_iter().collect();
        let n = self.values.len();
        let mut digits = vec![0usize; atoms.len()];
        loop {
            let v: MatrixValuation = atoms.iter().cloned().zip(digits.iter().copied()).collect();
            if !self.is_designated(self.eval(&v, f)?) {
                return Ok(Some(v));
            }
            let Some(pos) = (0..digits.len()).rev().find(|&i| digits[i] + 1 < n) else {
                return Ok(None);
            };
            digits[pos] += 1;
            for d in &mut digits[pos + 1..] {
                *d = 0;
            }
        }
    }

    pub fn show_valuation(&self, v: &MatrixValuation) -> String {
        v.iter().map(|(a, &i)| format!("{a}={}", self.values[i])).collect::<Vec<_>>().join(", ")
    }

    pub fn parse(text: &str) -> Result<Matrix, SemanticsError> {
        let mut name = None;
        let mut values: Vec<String> = Vec::new();
        let mut designated_labels: Vec<(usize, String)> = Vec::new();
        let mut raw_tables: Vec<(usize, Connective, String)> = Vec::new();
        for (idx, raw) in text.lines().enumerate() {
            let line = idx + 1;
            let content = raw.split('#').next().unwrap_or("").trim();
            if content.is_empty() {
                continue;
            }
            let bad = |m: String| SemanticsError::Format { line, message: m };
            let (keyword, rest) = content.split_once(char::is_whitespace).unwrap_or((content, ""));
            match keyword {
                "matrix" => name = Some(rest.trim().to_string()),
                "values" => values = rest.split_whitespace().map(String::from).collect(),
                "designated" => designated_labels.extend(rest.split_whitespace().map(|d| (line, d.to_string()))),
                "table" => {
                    let (sym, body) = rest.split_once(':').ok_or_else(|| bad("expected `table <op> : ...`".into()))?;
                    let sym = sym.trim();
                    let c = Connective::from_symbol(sym).ok_or_else(|| bad(format!("unknown connective `{sym}`")))?;
                    raw_tables.push((line, c, body.to_string()));
                }
                w => return Err(bad(format!("unknown keyword `{w}`"))),
            }
        }
        let fmt_err = |line, message: String| SemanticsError::Format { line, message };
        let name = name.filter(|n| !n.is_empty()).ok_or_else(|| fmt_err(1, "missing `matrix` line".into()))?;
        if values.is_empty() {
            return Err(fmt_err(1, "missing `values` line".into()));
        }
        let index = |line: usize, label: &str| {
            values.iter().position(|v| v == label).ok_or_else(|| fmt_err(line, format!("unknown value `{label}`")))
        };
        let mut designated = BTreeSet::new();
        for (line, d) in &designated_labels {
            designated.insert(index(*line, d)?);
        }
        if designated.is_empty() {
            return Err(fmt_err(1, "no designated values".into()));
        }
        let n = values.len();
        let mut tables = BTreeMap::new();
        for (line, c, body) in raw_tables {
            let rows: Vec<&str> = body.split('|').collect();
            let (want_rows, want_cols) = match c.arity() {
                0 => (1, 1),
                1 => (1, n),
                _ => (n, n),
            };
            if rows.len() != want_rows {
                return Err(fmt_err(line, format!("expected {want_rows} rows for `{}`", c.symbol())));
            }
            let mut cells = Vec::with_capacity(want_rows * want_cols);
            for row in rows {
                let row: Vec<&str> = row.split_whitespace().collect();
                if row.len() != want_cols {
                    return Err(fmt_err(line, format!("expected {want_cols} entries per row")));
                }
                for cell in row {
                    cells.push(index(line, cell)?);
                }
            }
            if tables.insert(c, cells).is_some() {
                return Err(fmt_err(line, format!("duplicate table for `{}`", c.symbol())));
            }
        }
        Ok(Matrix { name, values, designated, tables })
    }
}

impl fmt::Display for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "matrix {}", self.name)?;
        writeln!(f, "values {}", self.values.join(" "))?;
        let des: Vec<&str> = self.designated.iter().map(|&i| self.values[i].as_str()).collect();
        writeln!(f, "designated {}", des.join(" "))?;
        let n = self.values.len();
        for (c, cells) in &self.tables {
            let row_len = if c.arity() == 2 { n } else { cells.len() };
            let rows: Vec<String> = cells
                .chunks(row_len)
                .map(|r| r.iter().map(|&i| self.values[i].as_str()).collect::<Vec<_>>().join(" "))
                .collect();
            writeln!(f, "table {} : {}", c.symbol(), rows.join(" | "))?;
        }
        Ok(())
    }
}
