use crate::error::{Error, Result};

/// Binary sparse parity-check matrix stored in both orientations.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SparseParityCheck {
    m: usize,
    n: usize,
    rows: Vec<Vec<usize>>,
    cols: Vec<Vec<usize>>,
}

impl SparseParityCheck {
    /// Builds a matrix from per-row column indices.
    ///
    /// Indices are sorted; duplicates and out-of-range indices are rejected.
    pub fn from_rows(n: usize, mut rows: Vec<Vec<usize>>) -> Result<Self> {
        let m = rows.len();
        let mut cols = vec![Vec::new(); n];
        for (i, row) in rows.iter_mut().enumerate() {
            row.sort_unstable();
            for w in row.windows(2) {
                if w[0] == w[1] {
                    return Err(Error::InvalidMatrix(format!(
                        "duplicate entry ({i}, {})",
                        w[0]
                    )));
                }
            }
            for &j in row.iter() {
                if j >= n {
                    return Err(Error::InvalidMatrix(format!(
                        "column {j} out of range in row {i} (n = {n})"
                    )));
                }
                cols[j].push(i);
            }
        }
        Ok(Self { m, n, rows, cols })
    }

    /// Builds an `m x n` matrix from `(row, col)` pairs in any order.
    pub fn from_edges(
        m: usize,
        n: usize,
        edges: impl IntoIterator<Item = (usize, usize)>,
    ) -> Result<Self> {
        let mut rows = vec![Vec::new(); m];
        for (i, j) in edges {
            if i >= m {
                return Err(Error::InvalidMatrix(format!(
                    "row {i} out of range (m = {m})"
                )));
            }
            rows[i].push(j);
        }
        Self::from_rows(n, rows)
    }

    pub fn from_dense(dense: &[Vec<u8>]) -> Result<Self> {
        let n = dense.first().map_or(0, Vec::len);
        let rows = dense
            .iter()
            .map(|r| {
                if r.len() != n {
                    return Err(Error::InvalidMatrix("ragged dense matrix".into()));
                }
                Ok(r.iter()
                    .enumerate()
                    .filter(|(_, &v)| v != 0)
                    .map(|(j, _)| j)
                    .collect())
            })
            .collect::<Result<Vec<_>>>()?;
        Self::from_rows(n, rows)
    }

    pub fn identity(n: usize) -> Self {
        Self::from_rows(n, (0..n).map(|i| vec![i]).collect()).expect("identity is valid")
    }

    /// Number of rows (checks).
    pub fn m(&self) -> usize {
        self.m
    }

    /// Number of columns (code bits).
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn row(&self, i: usize) -> &[usize] {
        &self.rows[i]
    }

    pub fn col(&self, j: usize) -> &[usize] {
        &self.cols[j]
    }

    pub fn rows(&self) -> &[Vec<usize>] {
        &self.rows
    }

    pub fn cols(&self) -> &[Vec<usize>] {
        &self.cols
    }

    pub fn num_edges(&self) -> usize {
        self.rows.iter().map(Vec::len).sum()
    }

    /// Edges in row-major order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.rows
            .iter()
            .enumerate()
            .flat_map(|(i, r)| r.iter().map(move |&j| (i, j)))
    }

    pub fn contains(&self, i: usize, j: usize) -> bool {
        self.rows[i].binary_search(&j).is_ok()
    }

    pub fn row_degrees(&self) -> Vec<usize> {
        self.rows.iter().map(Vec::len).collect()
    }

    pub fn col_degrees(&self) -> Vec<usize> {
        self.cols.iter().map(Vec::len).collect()
    }

    pub fn to_dense(&self) -> Vec<Vec<u8>> {
        let mut d = vec![vec![0u8; self.n]; self.m];
        for (i, j) in self.edges() {
            d[i][j] = 1;
        }
        d
    }

    /// GF(2) product `H v^T`.
    pub fn syndrome(&self, v: &[u8]) -> Result<Vec<u8>> {
        if v.len() != self.n {
            return Err(Error::LengthMismatch {
                expected: self.n,
                got: v.len(),
            });
        }
        Ok(self
            .rows
            .iter()
            .map(|r| r.iter().fold(0u8, |acc, &j| acc ^ (v[j] & 1)))
            .collect())
    }

    pub fn is_codeword(&self, v: &[u8]) -> Result<bool> {
        Ok(self.syndrome(v)?.iter().all(|&s| s == 0))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn syndrome_examples() {
        let h = SparseParityCheck::from_dense(&[vec![1, 1]]).unwrap();
        assert_eq!(h.syndrome(&[0, 0]).unwrap(), vec![0]);
        assert_eq!(h.syndrome(&[1, 1]).unwrap(), vec![0]);
        assert_eq!(h.syndrome(&[1, 0]).unwrap(), vec![1]);
        assert!(h.is_codeword(&[1, 1]).unwrap());
        assert!(matches!(
            h.syndrome(&[1]),
            Err(Error::LengthMismatch {
                expected: 2,
                got: 1
            })
        ));
    }

    #[test]
    fn orientations_agree() {
        let h =
            SparseParityCheck::from_edges(3, 4, [(2, 0), (0, 3), (1, 1), (0, 0), (2, 3)]).unwrap();
        assert_eq!(h.row(0), &[0, 3]);
        assert_eq!(h.col(3), &[0, 2]);
        assert_eq!(h.num_edges(), 5);
        let from_cols: usize = h.col_degrees().iter().sum();
        assert_eq!(from_cols, 5);
    }

    #[test]
    fn rejects_duplicates_and_range() {
        assert!(SparseParityCheck::from_rows(3, vec![vec![1, 1]]).is_err());
        assert!(SparseParityCheck::from_rows(3, vec![vec![3]]).is_err());
    }
}
