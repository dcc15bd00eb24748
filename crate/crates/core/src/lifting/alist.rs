//! Plain-text alist format.
//!
//! ```text
//! n m
//! max_col_degree max_row_degree
//! <n column degrees>
//! <m row degrees>
//! <n lines: 1-based row indices of each column, zero-padded>
//! <m lines: 1-based column indices of each row, zero-padded>
//! ```

use std::fmt::Write as _;

use super::SparseParityCheck;
use crate::error::{Error, Result};

pub fn write_alist(h: &SparseParityCheck) -> String {
    let col_deg = h.col_degrees();
    let row_deg = h.row_degrees();
    let max_col = col_deg.iter().copied().max().unwrap_or(0);
    let max_row = row_deg.iter().copied().max().unwrap_or(0);
    let mut out = String::new();
    let _ = writeln!(out, "{} {}", h.n(), h.m());
    let _ = writeln!(out, "{max_col} {max_row}");
    let _ = writeln!(out, "{}", join(col_deg.iter().copied()));
    let _ = writeln!(out, "{}", join(row_deg.iter().copied()));
    for col in h.cols() {
        let padded = col
            .iter()
            .map(|&i| i + 1)
            .chain(std::iter::repeat(0).take(max_col - col.len()));
        let _ = writeln!(out, "{}", join(padded));
    }
    for row in h.rows() {
        let padded = row
            .iter()
            .map(|&j| j + 1)
            .chain(std::iter::repeat(0).take(max_row - row.len()));
        let _ = writeln!(out, "{}", join(padded));
    }
    out
}

fn join(values: impl IntoIterator<Item = usize>) -> String {
    values
        .into_iter()
        .map(|x| x.to_string())
        .collect::<Vec<_>>()
        .join(" ")
}

struct Lines<'a> {
    inner: std::iter::Enumerate<std::str::Lines<'a>>,
    current: usize,
}

impl<'a> Lines<'a> {
    fn next_numbers(&mut self, what: &str) -> Result<Vec<usize>> {
        loop {
            let Some((idx, line)) = self.inner.next() else {
                return Err(Error::Alist {
                    line: self.current + 1,
                    msg: format!("unexpected end of input, expected {what}"),
                });
            };
            self.current = idx + 1;
            if line.trim().is_empty() {
                continue;
            }
            return line
                .split_whitespace()
                .map(|tok| {
                    tok.parse::<usize>().map_err(|_| Error::Alist {
                        line: self.current,
                        msg: format!("invalid number {tok:?}"),
                    })
                })
                .collect();
        }
    }

    fn err(&self, msg: String) -> Error {
        Error::Alist {
            line: self.current,
            msg,
        }
    }
}

pub fn read_alist(text: &str) -> Result<SparseParityCheck> {
    let mut lines = Lines {
        inner: text.lines().enumerate(),
        current: 0,
    };
    let header = lines.next_numbers("dimensions")?;
    let [n, m] = header[..] else {
        return Err(lines.err("expected `n m`".into()));
    };
    let maxes = lines.next_numbers("maximum degrees")?;
    let [max_col, max_row] = maxes[..] else {
        return Err(lines.err("expected `max_col_degree max_row_degree`".into()));
    };
    let col_deg = lines.next_numbers("column degrees")?;
    if col_deg.len() != n {
        return Err(lines.err(format!(
            "expected {n} column degrees, got {}",
            col_deg.len()
        )));
    }
    let row_deg = lines.next_numbers("row degrees")?;
    if row_deg.len() != m {
        return Err(lines.err(format!("expected {m} row degrees, got {}", row_deg.len())));
    }
    if col_deg.iter().any(|&d| d > max_col) || row_deg.iter().any(|&d| d > max_row) {
        return Err(lines.err("a degree exceeds the declared maximum".into()));
    }

    let mut read_lists =
        |count: usize, degrees: &[usize], bound: usize, what: &str| -> Result<Vec<Vec<usize>>> {
            let mut lists = Vec::with_capacity(count);
            for (k, &deg) in degrees.iter().enumerate() {
                let raw = lines.next_numbers(what)?;
                let entries: Vec<usize> = raw.iter().copied().filter(|&x| x != 0).collect();
                if entries.len() != deg {
                    return Err(lines.err(format!(
                        "{what} {} lists {} entries, degree is {deg}",
                        k + 1,
                        entries.len()
                    )));
                }
                if raw.len() < deg || raw[deg..].iter().any(|&x| x != 0) {
                    return Err(lines.err(format!("{what} {} has misplaced padding", k + 1)));
                }
                let mut sorted = Vec::with_capacity(deg);
                for x in entries {
                    if x > bound {
                        return Err(lines.err(format!("index {x} out of range 1..={bound}")));
                    }
                    sorted.push(x - 1);
                }
                sorted.sort_unstable();
                if sorted.windows(2).any(|w| w[0] == w[1]) {
                    return Err(lines.err(format!("duplicate index in {what} {}", k + 1)));
                }
                lists.push(sorted);
            }
            Ok(lists)
        };
    let cols = read_lists(n, &col_deg, m, "column")?;
    let rows = read_lists(m, &row_deg, n, "row")?;

    let h = SparseParityCheck::from_rows(n, rows)?;
    if h.cols() != cols.as_slice() {
        return Err(Error::Alist {
            line: 0,
            msg: "column and row lists describe different matrices".into(),
        });
    }
    Ok(h)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn identity_text() {
        let text = write_alist(&SparseParityCheck::identity(4));
        assert_eq!(text, "4 4\n1 1\n1 1 1 1\n1 1 1 1\n1\n2\n3\n4\n1\n2\n3\n4\n");
        assert_eq!(read_alist(&text).unwrap(), SparseParityCheck::identity(4));
    }

    #[test]
    fn padding_round_trip() {
        let h = SparseParityCheck::from_dense(&[vec![1, 1, 0], vec![0, 1, 1]]).unwrap();
        let text = write_alist(&h);
        assert_eq!(text, "3 2\n2 2\n1 2 1\n2 2\n1 0\n1 2\n2 0\n1 2\n2 3\n");
        assert_eq!(read_alist(&text).unwrap(), h);
    }

    #[test]
    fn malformed_inputs() {
        // duplicate index in a column
        let dup = "2 1\n2 2\n2 1\n2\n1 1\n1\n1 2\n";
        assert!(matches!(read_alist(dup), Err(Error::Alist { .. })));
        // out of range
        assert!(read_alist("1 1\n1 1\n1\n1\n2\n1\n").is_err());
        // wrong count
        assert!(read_alist("2 1\n1 2\n1 1\n2\n").is_err());
        // inconsistent halves
        assert!(read_alist("2 2\n1 1\n1 1\n1 1\n1\n2\n2\n1\n").is_err());
        assert!(read_alist("").is_err());
        assert!(read_alist("x y\n").is_err());
    }
}
