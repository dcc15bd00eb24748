//! Unwrapping a block parity-check matrix into a convolutional one.
//!
//! The `T(c - b) x Tc` matrix is cut into a `T x T` grid of `(c - b) x c`
//! tiles. Component `H_i(t)` is the tile at `(t, (t - i) mod T)`: tiles on
//! the `i`-th subdiagonal stay in place, and tiles above the diagonal
//! (`t < i`) are the ones pasted below it by the diagonal extension. Placing
//! `H_i(t)` at block `(t, t - i)` of a band matrix gives the unwrapped code,
//! which is periodically time-varying with period `T`.

use super::SparseParityCheck;
use crate::error::{Error, Result};

/// Nonzero positions of one `(c - b) x c` tile, sorted row-major.
pub type Tile = Vec<(usize, usize)>;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UnwrappedCode {
    tile_rows: usize,
    tile_cols: usize,
    period: usize,
    memory: usize,
    /// `components[i][t]` is `H_i(t)`.
    components: Vec<Vec<Tile>>,
}

impl UnwrappedCode {
    pub fn tile_shape(&self) -> (usize, usize) {
        (self.tile_rows, self.tile_cols)
    }

    /// Number of tile rows `T` of the source matrix.
    pub fn period(&self) -> usize {
        self.period
    }

    /// Largest `i` with a nonzero `H_i(t)`.
    pub fn memory(&self) -> usize {
        self.memory
    }

    /// `H_i(0), ..., H_i(T - 1)`.
    pub fn component(&self, i: usize) -> &[Tile] {
        &self.components[i]
    }

    pub fn components(&self) -> &[Vec<Tile>] {
        &self.components
    }

    /// Folds the band back onto the `T x T` tile grid, recovering the
    /// source matrix.
    pub fn reassemble(&self) -> SparseParityCheck {
        let t_count = self.period;
        let mut edges = Vec::new();
        for (i, comp) in self.components.iter().enumerate() {
            for (t, tile) in comp.iter().enumerate() {
                let col_block = (t + t_count - i) % t_count;
                for &(r, c) in tile {
                    edges.push((t * self.tile_rows + r, col_block * self.tile_cols + c));
                }
            }
        }
        SparseParityCheck::from_edges(t_count * self.tile_rows, t_count * self.tile_cols, edges)
            .expect("components partition the source matrix")
    }

    /// The unwrapped convolutional code terminated after `sections` column
    /// blocks: block `(t + i, t)` holds `H_i((t + i) mod T)`.
    pub fn terminated(&self, sections: usize) -> SparseParityCheck {
        let mut edges = Vec::new();
        for t in 0..sections {
            for (i, comp) in self.components.iter().enumerate() {
                let row_block = t + i;
                for &(r, c) in &comp[row_block % self.period] {
                    edges.push((row_block * self.tile_rows + r, t * self.tile_cols + c));
                }
            }
        }
        SparseParityCheck::from_edges(
            (sections + self.memory) * self.tile_rows,
            sections * self.tile_cols,
            edges,
        )
        .expect("band placement has no overlaps")
    }
}

/// Splits `h` into convolutional components for a rate `b / c` code.
pub fn unwrap_block_parity_check(
    h: &SparseParityCheck,
    b: usize,
    c: usize,
) -> Result<UnwrappedCode> {
    let tile_rows = c
        .checked_sub(b)
        .filter(|&r| r > 0)
        .ok_or_else(|| Error::InvalidConfig(format!("need 0 <= b < c, got b = {b}, c = {c}")))?;
    let tile_cols = c;
    let mismatch = || Error::TileMismatch {
        rows: h.m(),
        cols: h.n(),
        tile_rows,
        tile_cols,
    };
    if h.m() == 0 || h.m() % tile_rows != 0 || h.n() % tile_cols != 0 {
        return Err(mismatch());
    }
    let period = h.m() / tile_rows;
    if h.n() / tile_cols != period {
        return Err(mismatch());
    }
    let mut components = vec![vec![Tile::new(); period]; period];
    for (row, col) in h.edges() {
        let t = row / tile_rows;
        let s = col / tile_cols;
        let i = (t + period - s) % period;
        components[i][t].push((row % tile_rows, col % tile_cols));
    }
    let memory = components
        .iter()
        .rposition(|comp| comp.iter().any(|tile| !tile.is_empty()))
        .unwrap_or(0);
    components.truncate(memory + 1);
    for comp in &mut components {
        for tile in comp {
            tile.sort_unstable();
        }
    }
    Ok(UnwrappedCode {
        tile_rows,
        tile_cols,
        period,
        memory,
        components,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn block_diagonal_needs_no_wrap() {
        let h = SparseParityCheck::from_dense(&[vec![1, 1, 0, 0], vec![0, 0, 1, 1]]).unwrap();
        let u = unwrap_block_parity_check(&h, 1, 2).unwrap();
        assert_eq!(u.memory(), 0);
        assert_eq!(u.period(), 2);
        assert_eq!(
            u.component(0),
            &[vec![(0, 0), (0, 1)], vec![(0, 0), (0, 1)]]
        );
        assert_eq!(u.reassemble(), h);
    }

    #[test]
    fn band_prefix_recovers_unit_components() {
        let h = SparseParityCheck::from_dense(&[
            vec![1, 1, 0, 0, 0, 0],
            vec![1, 1, 1, 1, 0, 0],
            vec![1, 1, 1, 1, 1, 1],
        ])
        .unwrap();
        let u = unwrap_block_parity_check(&h, 1, 2).unwrap();
        assert_eq!(u.memory(), 2);
        let ones = vec![(0, 0), (0, 1)];
        assert_eq!(u.component(0), &[ones.clone(), ones.clone(), ones.clone()]);
        assert_eq!(u.component(1), &[vec![], ones.clone(), ones.clone()]);
        assert_eq!(u.component(2), &[vec![], vec![], ones.clone()]);
        assert_eq!(u.reassemble(), h);
    }

    #[test]
    fn wrapped_tiles_move_below_diagonal() {
        // a cyclic band: row block 0 also touches the last column block
        let h = SparseParityCheck::from_dense(&[vec![1, 0, 0, 1], vec![0, 1, 1, 0]]).unwrap();
        let u = unwrap_block_parity_check(&h, 1, 2).unwrap();
        assert_eq!(u.memory(), 1);
        assert_eq!(u.component(1)[0], vec![(0, 1)]);
        let cc = u.terminated(3);
        assert_eq!(
            cc.to_dense(),
            vec![
                vec![1, 0, 0, 0, 0, 0],
                vec![0, 1, 1, 0, 0, 0],
                vec![0, 0, 0, 1, 1, 0],
                vec![0, 0, 0, 0, 0, 1],
            ]
        );
    }

    #[test]
    fn dimension_mismatch() {
        let h = SparseParityCheck::from_dense(&[vec![1, 1, 1], vec![1, 0, 1]]).unwrap();
        assert!(matches!(
            unwrap_block_parity_check(&h, 2, 3),
            Err(Error::TileMismatch { .. })
        ));
        assert!(unwrap_block_parity_check(&h, 3, 3).is_err());
    }
}
