use super::SparseParityCheck;
use crate::error::{Error, Result};

/// Bipartite Tanner graph with dense edge indices.
///
/// Edges are numbered in row-major order of the parity-check matrix, so the
/// edges of check `i` form the contiguous range [`TannerGraph::check_edges`].
/// Each variable keeps the ids of its incident edges sorted by check index.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TannerGraph {
    n: usize,
    m: usize,
    edge_var: Vec<usize>,
    edge_check: Vec<usize>,
    check_offsets: Vec<usize>,
    var_offsets: Vec<usize>,
    var_edge_ids: Vec<usize>,
}

impl TannerGraph {
    pub fn num_variables(&self) -> usize {
        self.n
    }

    pub fn num_checks(&self) -> usize {
        self.m
    }

    pub fn num_edges(&self) -> usize {
        self.edge_var.len()
    }

    /// Variable endpoint of edge `e`.
    #[inline]
    pub fn edge_variable(&self, e: usize) -> usize {
        self.edge_var[e]
    }

    /// Check endpoint of edge `e`.
    #[inline]
    pub fn edge_check(&self, e: usize) -> usize {
        self.edge_check[e]
    }

    #[inline]
    pub fn check_edges(&self, i: usize) -> std::ops::Range<usize> {
        self.check_offsets[i]..self.check_offsets[i + 1]
    }

    #[inline]
    pub fn variable_edges(&self, j: usize) -> &[usize] {
        &self.var_edge_ids[self.var_offsets[j]..self.var_offsets[j + 1]]
    }

    pub fn check_degree(&self, i: usize) -> usize {
        self.check_offsets[i + 1] - self.check_offsets[i]
    }

    pub fn variable_degree(&self, j: usize) -> usize {
        self.var_offsets[j + 1] - self.var_offsets[j]
    }

    pub fn max_check_degree(&self) -> usize {
        (0..self.m).map(|i| self.check_degree(i)).max().unwrap_or(0)
    }

    /// `(check, variable)` pairs indexed by edge id.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.edge_check
            .iter()
            .copied()
            .zip(self.edge_var.iter().copied())
    }

    pub fn to_parity_check(&self) -> SparseParityCheck {
        SparseParityCheck::from_edges(self.m, self.n, self.edges())
            .expect("graph edges form a valid matrix")
    }
}

/// Builds the Tanner graph of `h`. Checks without neighbours are rejected.
pub fn to_tanner(h: &SparseParityCheck) -> Result<TannerGraph> {
    if let Some(i) = h.rows().iter().position(Vec::is_empty) {
        return Err(Error::InvalidMatrix(format!("row {i} is all-zero")));
    }
    let e = h.num_edges();
    let mut edge_var = Vec::with_capacity(e);
    let mut edge_check = Vec::with_capacity(e);
    let mut check_offsets = Vec::with_capacity(h.m() + 1);
    check_offsets.push(0);
    for (i, row) in h.rows().iter().enumerate() {
        for &j in row {
            edge_var.push(j);
            edge_check.push(i);
        }
        check_offsets.push(edge_var.len());
    }
    let mut var_offsets = vec![0; h.n() + 1];
    for &j in &edge_var {
        var_offsets[j + 1] += 1;
    }
    for j in 0..h.n() {
        var_offsets[j + 1] += var_offsets[j];
    }
    let mut fill = var_offsets.clone();
    let mut var_edge_ids = vec![0; e];
    // row-major edge order keeps each variable's list sorted by check
    for (id, &j) in edge_var.iter().enumerate() {
        var_edge_ids[fill[j]] = id;
        fill[j] += 1;
    }
    Ok(TannerGraph {
        n: h.n(),
        m: h.m(),
        edge_var,
        edge_check,
        check_offsets,
        var_offsets,
        var_edge_ids,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn identity_graph() {
        let g = to_tanner(&SparseParityCheck::identity(4)).unwrap();
        assert_eq!(
            (g.num_checks(), g.num_variables(), g.num_edges()),
            (4, 4, 4)
        );
        for j in 0..4 {
            assert_eq!(g.variable_edges(j), &[j]);
        }
    }

    #[test]
    fn empty_row_rejected() {
        let h = SparseParityCheck::from_rows(2, vec![vec![0, 1], vec![]]).unwrap();
        assert!(matches!(to_tanner(&h), Err(Error::InvalidMatrix(_))));
    }

    #[test]
    fn round_trip_and_incidence() {
        let h =
            SparseParityCheck::from_dense(&[vec![1, 1, 0, 1], vec![0, 1, 1, 1], vec![1, 0, 1, 0]])
                .unwrap();
        let g = to_tanner(&h).unwrap();
        assert_eq!(g.to_parity_check(), h);
        for j in 0..4 {
            let checks: Vec<usize> = g
                .variable_edges(j)
                .iter()
                .map(|&e| g.edge_check(e))
                .collect();
            assert_eq!(checks, h.col(j));
        }
    }
}
