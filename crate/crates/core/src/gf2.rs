//! Dense linear algebra over GF(2) with rows packed into `u64` words.

use crate::lifting::SparseParityCheck;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BitMatrix {
    cols: usize,
    words: usize,
    rows: Vec<Vec<u64>>,
}

impl BitMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        let words = cols.div_ceil(64);
        Self {
            cols,
            words,
            rows: vec![vec![0; words]; rows],
        }
    }

    pub fn from_sparse(h: &SparseParityCheck) -> Self {
        let mut out = Self::zeros(h.m(), h.n());
        for (i, j) in h.edges() {
            out.set(i, j, true);
        }
        out
    }

    pub fn rows(&self) -> usize {
        self.rows.len()
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> bool {
        self.rows[i][j / 64] >> (j % 64) & 1 == 1
    }

    pub fn set(&mut self, i: usize, j: usize, value: bool) {
        let mask = 1u64 << (j % 64);
        if value {
            self.rows[i][j / 64] |= mask;
        } else {
            self.rows[i][j / 64] &= !mask;
        }
    }

    pub fn row_words(&self, i: usize) -> &[u64] {
        &self.rows[i]
    }

    /// Reduced row echelon form in place; returns the pivot columns. Zero
    /// rows end up at the bottom.
    pub fn rref(&mut self) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..self.cols {
            if r == self.rows.len() {
                break;
            }
            let Some(p) = (r..self.rows.len()).find(|&i| self.get(i, c)) else {
                continue;
            };
            self.rows.swap(r, p);
            let pivot = self.rows[r].clone();
            for i in 0..self.rows.len() {
                if i != r && self.get(i, c) {
                    for (w, &pw) in self.rows[i].iter_mut().zip(&pivot) {
                        *w ^= pw;
                    }
                }
            }
            pivots.push(c);
            r += 1;
        }
        pivots
    }

    pub fn rank(&self) -> usize {
        self.clone().rref().len()
    }

    /// A basis of `{x : H x = 0}`, each vector packed like a row.
    pub fn nullspace(&self) -> Vec<Vec<u64>> {
        let mut reduced = self.clone();
        let pivots = reduced.rref();
        let mut is_pivot = vec![false; self.cols];
        for &p in &pivots {
            is_pivot[p] = true;
        }
        (0..self.cols)
            .filter(|&f| !is_pivot[f])
            .map(|f| {
                let mut v = vec![0u64; self.words];
                v[f / 64] |= 1 << (f % 64);
                for (r, &p) in pivots.iter().enumerate() {
                    if reduced.get(r, f) {
                        v[p / 64] |= 1 << (p % 64);
                    }
                }
                v
            })
            .collect()
    }
}

pub fn rank(h: &SparseParityCheck) -> usize {
    BitMatrix::from_sparse(h).rank()
}
