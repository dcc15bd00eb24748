//! Base-matrix algebra: validation, edge spreading, coupling and termination.
//!
//! A protograph with `c` variable-node types and `c - b` check-node types is
//! described by a `(c - b) x c` base matrix whose entries are edge
//! multiplicities. Edge spreading splits the base matrix into `ms + 1`
//! components that couple neighbouring copies of the protograph; terminating
//! the resulting chain after `L` positions yields a block-banded
//! `(L + ms)(c - b) x Lc` matrix.

use std::collections::BTreeMap;

use num_rational::Ratio;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Dense row-major matrix of small non-negative integers.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<u32>,
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            data: vec![0; rows * cols],
        }
    }

    /// Builds a matrix from nested rows. All rows must have the same length.
    pub fn from_rows(rows: &[Vec<u32>]) -> Result<Self> {
        let cols = rows.first().map_or(0, Vec::len);
        let mut data = Vec::with_capacity(rows.len() * cols);
        for (r, row) in rows.iter().enumerate() {
            if row.len() != cols {
                return Err(Error::RaggedGrid {
                    row: r,
                    len: row.len(),
                    expected: cols,
                });
            }
            data.extend_from_slice(row);
        }
        Ok(Self {
            rows: rows.len(),
            cols,
            data,
        })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn get(&self, r: usize, c: usize) -> u32 {
        self.data[r * self.cols + c]
    }

    #[inline]
    pub fn set(&mut self, r: usize, c: usize, v: u32) {
        self.data[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> &[u32] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn row_sums(&self) -> Vec<u32> {
        (0..self.rows).map(|r| self.row(r).iter().sum()).collect()
    }

    pub fn col_sums(&self) -> Vec<u32> {
        (0..self.cols)
            .map(|c| (0..self.rows).map(|r| self.get(r, c)).sum())
            .collect()
    }

    /// Sum of all entries, i.e. the number of protograph edges.
    pub fn total(&self) -> u64 {
        self.data.iter().map(|&v| u64::from(v)).sum()
    }

    pub fn max_entry(&self) -> u32 {
        self.data.iter().copied().max().unwrap_or(0)
    }

    pub fn to_rows(&self) -> Vec<Vec<u32>> {
        (0..self.rows).map(|r| self.row(r).to_vec()).collect()
    }

    fn same_shape(&self, other: &IntMatrix) -> bool {
        self.rows == other.rows && self.cols == other.cols
    }
}

/// A validated protograph base matrix.
///
/// Every row and column has a positive entry and there are fewer rows
/// (check types) than columns (variable types).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BaseMatrix(IntMatrix);

impl BaseMatrix {
    pub fn new(grid: &[Vec<i64>]) -> Result<Self> {
        validate_base_matrix(grid)
    }

    pub fn matrix(&self) -> &IntMatrix {
        &self.0
    }

    /// Number of check-node types, `c - b`.
    pub fn check_types(&self) -> usize {
        self.0.rows
    }

    /// Number of variable-node types, `c`.
    pub fn variable_types(&self) -> usize {
        self.0.cols
    }

    /// Rate `b / c` of the uncoupled block protograph.
    pub fn block_rate(&self) -> Ratio<i64> {
        let c = self.0.cols as i64;
        Ratio::new(c - self.0.rows as i64, c)
    }
}

/// Checks an integer grid against the protograph invariants.
pub fn validate_base_matrix(grid: &[Vec<i64>]) -> Result<BaseMatrix> {
    if grid.is_empty() || grid[0].is_empty() {
        return Err(Error::EmptyGrid);
    }
    let cols = grid[0].len();
    let mut rows = Vec::with_capacity(grid.len());
    for (r, row) in grid.iter().enumerate() {
        if row.len() != cols {
            return Err(Error::RaggedGrid {
                row: r,
                len: row.len(),
                expected: cols,
            });
        }
        let mut converted = Vec::with_capacity(cols);
        for (c, &value) in row.iter().enumerate() {
            if value < 0 {
                return Err(Error::NegativeEntry {
                    row: r,
                    col: c,
                    value,
                });
            }
            let value = u32::try_from(value)
                .map_err(|_| Error::InvalidConfig(format!("entry {value} too large")))?;
            converted.push(value);
        }
        rows.push(converted);
    }
    let m = IntMatrix::from_rows(&rows)?;
    if let Some(r) = m.row_sums().iter().position(|&s| s == 0) {
        return Err(Error::EmptyRow(r));
    }
    if let Some(c) = m.col_sums().iter().position(|&s| s == 0) {
        return Err(Error::EmptyColumn(c));
    }
    if m.rows >= m.cols {
        return Err(Error::NonPositiveRate {
            rows: m.rows,
            cols: m.cols,
        });
    }
    Ok(BaseMatrix(m))
}

/// How the multiplicity of each base entry is divided among the components.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SpreadRule {
    /// Every component equals `B / (ms + 1)`.
    Uniform,
    /// Each unit of multiplicity is assigned to a component drawn uniformly
    /// from `0..=ms`.
    Random { seed: u64 },
    /// Caller-supplied components, which must sum to `B`.
    Explicit(Vec<IntMatrix>),
}

/// Components `B_0, ..., B_ms` of an edge spreading of a base matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EdgeSpreading {
    base: BaseMatrix,
    components: Vec<IntMatrix>,
}

impl EdgeSpreading {
    pub fn base(&self) -> &BaseMatrix {
        &self.base
    }

    pub fn components(&self) -> &[IntMatrix] {
        &self.components
    }

    /// Syndrome former memory `ms`.
    pub fn memory(&self) -> usize {
        self.components.len() - 1
    }
}

/// Splits `base` into `memory + 1` components according to `rule`.
pub fn edge_spread(base: &BaseMatrix, memory: usize, rule: SpreadRule) -> Result<EdgeSpreading> {
    let b = base.matrix();
    let parts = memory + 1;
    let components = match rule {
        SpreadRule::Uniform => {
            let mut comp = IntMatrix::zeros(b.rows, b.cols);
            for r in 0..b.rows {
                for c in 0..b.cols {
                    let v = b.get(r, c);
                    if v as usize % parts != 0 {
                        return Err(Error::NotDivisible {
                            row: r,
                            col: c,
                            value: v,
                            parts,
                        });
                    }
                    comp.set(r, c, v / parts as u32);
                }
            }
            vec![comp; parts]
        }
        SpreadRule::Random { seed } => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let mut comps = vec![IntMatrix::zeros(b.rows, b.cols); parts];
            for r in 0..b.rows {
                for c in 0..b.cols {
                    for _ in 0..b.get(r, c) {
                        let i = rng.gen_range(0..parts);
                        let cur = comps[i].get(r, c);
                        comps[i].set(r, c, cur + 1);
                    }
                }
            }
            comps
        }
        SpreadRule::Explicit(comps) => {
            if comps.len() != parts {
                return Err(Error::SpreadingMismatch(format!(
                    "expected {parts} components for memory {memory}, got {}",
                    comps.len()
                )));
            }
            if let Some(i) = comps.iter().position(|m| !m.same_shape(b)) {
                return Err(Error::SpreadingMismatch(format!(
                    "component {i} is {}x{}, base is {}x{}",
                    comps[i].rows, comps[i].cols, b.rows, b.cols
                )));
            }
            for r in 0..b.rows {
                for c in 0..b.cols {
                    let sum: u32 = comps.iter().map(|m| m.get(r, c)).sum();
                    if sum != b.get(r, c) {
                        return Err(Error::SpreadingMismatch(format!(
                            "entry ({r}, {c}) sums to {sum}, base has {}",
                            b.get(r, c)
                        )));
                    }
                }
            }
            comps
        }
    };
    Ok(EdgeSpreading {
        base: base.clone(),
        components,
    })
}

/// A coupled chain of `L` protographs terminated at both ends.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TerminatedBaseMatrix {
    spreading: EdgeSpreading,
    length: usize,
    rendered: IntMatrix,
}

impl TerminatedBaseMatrix {
    pub fn spreading(&self) -> &EdgeSpreading {
        &self.spreading
    }

    /// Termination length `L`.
    pub fn length(&self) -> usize {
        self.length
    }

    pub fn memory(&self) -> usize {
        self.spreading.memory()
    }

    pub fn rendered(&self) -> &IntMatrix {
        &self.rendered
    }
}

/// Places `B_i` at row block `t + i`, column block `t` for every position
/// `0 <= t < L`.
pub fn couple_and_terminate(
    spreading: &EdgeSpreading,
    length: usize,
) -> Result<TerminatedBaseMatrix> {
    if length == 0 {
        return Err(Error::InvalidConfig(
            "termination length must be at least 1".into(),
        ));
    }
    let rb = spreading.base.check_types();
    let cb = spreading.base.variable_types();
    let ms = spreading.memory();
    let mut rendered = IntMatrix::zeros((length + ms) * rb, length * cb);
    for t in 0..length {
        for (i, comp) in spreading.components.iter().enumerate() {
            for r in 0..rb {
                for c in 0..cb {
                    rendered.set((t + i) * rb + r, t * cb + c, comp.get(r, c));
                }
            }
        }
    }
    Ok(TerminatedBaseMatrix {
        spreading: spreading.clone(),
        length,
        rendered,
    })
}

/// Design rate `1 - (L + ms)(c - b) / (Lc)` of the terminated chain.
///
/// The rate of a lifted code can exceed this value when its parity-check
/// matrix has redundant rows.
pub fn design_rate(t: &TerminatedBaseMatrix) -> Ratio<i64> {
    let rows = ((t.length + t.memory()) * t.spreading.base.check_types()) as i64;
    let cols = (t.length * t.spreading.base.variable_types()) as i64;
    Ratio::from_integer(1) - Ratio::new(rows, cols)
}

/// Histograms of node degrees, keyed by degree.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct DegreeProfile {
    pub variable: BTreeMap<u32, usize>,
    pub check: BTreeMap<u32, usize>,
}

pub fn degree_profile(t: &TerminatedBaseMatrix) -> DegreeProfile {
    degree_profile_of(&t.rendered)
}

pub fn degree_profile_of(m: &IntMatrix) -> DegreeProfile {
    let mut profile = DegreeProfile::default();
    for d in m.col_sums() {
        *profile.variable.entry(d).or_default() += 1;
    }
    for d in m.row_sums() {
        *profile.check.entry(d).or_default() += 1;
    }
    profile
}

/// JSON document describing a base matrix and, optionally, its spreading
/// and termination length.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct ProtographDoc {
    #[serde(rename = "B")]
    pub base: Vec<Vec<i64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub ms: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub components: Option<Vec<Vec<Vec<u32>>>>,
    #[serde(rename = "L", default, skip_serializing_if = "Option::is_none")]
    pub length: Option<usize>,
}

impl ProtographDoc {
    pub fn from_spreading(spreading: &EdgeSpreading, length: Option<usize>) -> Self {
        Self {
            base: spreading
                .base
                .matrix()
                .to_rows()
                .into_iter()
                .map(|r| r.into_iter().map(i64::from).collect())
                .collect(),
            ms: Some(spreading.memory()),
            components: Some(
                spreading
                    .components
                    .iter()
                    .map(IntMatrix::to_rows)
                    .collect(),
            ),
            length,
        }
    }

    pub fn base_matrix(&self) -> Result<BaseMatrix> {
        validate_base_matrix(&self.base)
    }

    /// The spreading stored in the document. Without explicit components a
    /// given `ms` selects uniform spreading.
    pub fn spreading(&self) -> Result<Option<EdgeSpreading>> {
        let Some(comps) = &self.components else {
            return match self.ms {
                Some(ms) => edge_spread(&self.base_matrix()?, ms, SpreadRule::Uniform).map(Some),
                None => Ok(None),
            };
        };
        let base = self.base_matrix()?;
        let comps = comps
            .iter()
            .map(|c| IntMatrix::from_rows(c))
            .collect::<Result<Vec<_>>>()?;
        if comps.is_empty() {
            return Err(Error::SpreadingMismatch("no components".into()));
        }
        let memory = comps.len() - 1;
        if let Some(ms) = self.ms {
            if ms != memory {
                return Err(Error::SpreadingMismatch(format!(
                    "ms = {ms} but {} components given",
                    comps.len()
                )));
            }
        }
        edge_spread(&base, memory, SpreadRule::Explicit(comps)).map(Some)
    }

    /// The terminated chain described by the document, if it has both
    /// components and a termination length.
    pub fn terminated(&self) -> Result<Option<TerminatedBaseMatrix>> {
        match (self.spreading()?, self.length) {
            (Some(s), Some(l)) => couple_and_terminate(&s, l).map(Some),
            _ => Ok(None),
        }
    }

    /// The matrix to lift: the terminated chain when present, else `B`.
    pub fn lift_source(&self) -> Result<IntMatrix> {
        Ok(match self.terminated()? {
            Some(t) => t.rendered,
            None => self.base_matrix()?.0,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn b33() -> BaseMatrix {
        BaseMatrix::new(&[vec![3, 3]]).unwrap()
    }

    fn chain(length: usize) -> TerminatedBaseMatrix {
        let s = edge_spread(&b33(), 2, SpreadRule::Uniform).unwrap();
        couple_and_terminate(&s, length).unwrap()
    }

    #[test]
    fn validation_errors() {
        assert_eq!(b33().matrix().to_rows(), vec![vec![3, 3]]);
        assert!(matches!(
            BaseMatrix::new(&[vec![1]]),
            Err(Error::NonPositiveRate { .. })
        ));
        assert!(matches!(
            BaseMatrix::new(&[vec![0, 0], vec![1, 1]]),
            Err(Error::EmptyRow(0))
        ));
        assert!(matches!(
            BaseMatrix::new(&[vec![1, 0]]),
            Err(Error::EmptyColumn(1))
        ));
        assert!(matches!(
            BaseMatrix::new(&[vec![1, -1, 2]]),
            Err(Error::NegativeEntry { .. })
        ));
        assert!(matches!(BaseMatrix::new(&[]), Err(Error::EmptyGrid)));
        assert!(matches!(
            BaseMatrix::new(&[vec![1, 1, 1], vec![1, 1]]),
            Err(Error::RaggedGrid { .. })
        ));
    }

    #[test]
    fn uniform_spreading() {
        let s = edge_spread(&b33(), 2, SpreadRule::Uniform).unwrap();
        assert_eq!(s.memory(), 2);
        for c in s.components() {
            assert_eq!(c.to_rows(), vec![vec![1, 1]]);
        }
        let s0 = edge_spread(&b33(), 0, SpreadRule::Uniform).unwrap();
        assert_eq!(s0.components().len(), 1);
        assert_eq!(s0.components()[0].to_rows(), vec![vec![3, 3]]);

        let b44 = BaseMatrix::new(&[vec![4, 4]]).unwrap();
        assert!(matches!(
            edge_spread(&b44, 2, SpreadRule::Uniform),
            Err(Error::NotDivisible {
                value: 4,
                parts: 3,
                ..
            })
        ));
    }

    #[test]
    fn random_spreading_is_seeded() {
        let b = BaseMatrix::new(&[vec![3, 2, 4], vec![1, 3, 2]]).unwrap();
        let a = edge_spread(&b, 3, SpreadRule::Random { seed: 11 }).unwrap();
        let again = edge_spread(&b, 3, SpreadRule::Random { seed: 11 }).unwrap();
        assert_eq!(a, again);
        for r in 0..2 {
            for c in 0..3 {
                let sum: u32 = a.components().iter().map(|m| m.get(r, c)).sum();
                assert_eq!(sum, b.matrix().get(r, c));
            }
        }
    }

    #[test]
    fn explicit_spreading_checks_sum() {
        let ok = vec![
            IntMatrix::from_rows(&[vec![2, 1]]).unwrap(),
            IntMatrix::from_rows(&[vec![1, 2]]).unwrap(),
        ];
        assert!(edge_spread(&b33(), 1, SpreadRule::Explicit(ok)).is_ok());
        let bad = vec![
            IntMatrix::from_rows(&[vec![2, 1]]).unwrap(),
            IntMatrix::from_rows(&[vec![1, 1]]).unwrap(),
        ];
        assert!(matches!(
            edge_spread(&b33(), 1, SpreadRule::Explicit(bad)),
            Err(Error::SpreadingMismatch(_))
        ));
    }

    #[test]
    fn terminated_l3_matches_band_pattern() {
        let t = chain(3);
        assert_eq!(
            t.rendered().to_rows(),
            vec![
                vec![1, 1, 0, 0, 0, 0],
                vec![1, 1, 1, 1, 0, 0],
                vec![1, 1, 1, 1, 1, 1],
                vec![0, 0, 1, 1, 1, 1],
                vec![0, 0, 0, 0, 1, 1],
            ]
        );
    }

    #[test]
    fn uncoupled_l1() {
        let s = edge_spread(&b33(), 0, SpreadRule::Uniform).unwrap();
        let t = couple_and_terminate(&s, 1).unwrap();
        assert_eq!(t.rendered().to_rows(), vec![vec![3, 3]]);
        assert_eq!(design_rate(&t), Ratio::new(1, 2));
        let p = degree_profile(&t);
        assert_eq!(p.variable, BTreeMap::from([(3, 2)]));
        assert_eq!(p.check, BTreeMap::from([(6, 1)]));
        assert!(couple_and_terminate(&s, 0).is_err());
    }

    #[test]
    fn l10_chain_against_closed_form() {
        let t = chain(10);
        let m = t.rendered();
        assert_eq!((m.rows(), m.cols()), (12, 20));
        // entry (r, c) is one exactly when the row block r lies in
        // [c/2, c/2 + 2]
        for r in 0..12 {
            for c in 0..20 {
                let lo = c / 2;
                let expected = u32::from(r >= lo && r <= lo + 2);
                assert_eq!(m.get(r, c), expected, "({r}, {c})");
            }
        }
        assert!(m.col_sums().iter().all(|&s| s == 3));
        let mut rows = vec![2, 4];
        rows.extend(std::iter::repeat(6).take(8));
        rows.extend([4, 2]);
        assert_eq!(m.row_sums(), rows);
        assert_eq!(design_rate(&t), Ratio::new(2, 5));

        let p = degree_profile(&t);
        assert_eq!(p.variable, BTreeMap::from([(3, 20)]));
        assert_eq!(p.check, BTreeMap::from([(2, 2), (4, 2), (6, 8)]));
    }

    #[test]
    fn memoryless_chain_is_regular() {
        let s = edge_spread(&b33(), 0, SpreadRule::Uniform).unwrap();
        let t = couple_and_terminate(&s, 7).unwrap();
        let p = degree_profile(&t);
        assert_eq!(p.check, BTreeMap::from([(6, 7)]));
    }

    #[test]
    fn rate_increases_towards_block_rate() {
        let s = edge_spread(&b33(), 2, SpreadRule::Uniform).unwrap();
        let mut prev = None;
        for l in 1..=100 {
            let r = design_rate(&couple_and_terminate(&s, l).unwrap());
            assert!(r < Ratio::new(1, 2));
            if let Some(p) = prev {
                assert!(r > p);
            }
            prev = Some(r);
        }
        let r100 = *prev.unwrap().numer() as f64 / *prev.unwrap().denom() as f64;
        assert!((0.5 - r100).abs() < 0.011);
    }

    #[test]
    fn doc_round_trip() {
        let s = edge_spread(&b33(), 2, SpreadRule::Uniform).unwrap();
        let doc = ProtographDoc::from_spreading(&s, Some(4));
        let text = serde_json::to_string(&doc).unwrap();
        assert_eq!(
            text,
            r#"{"B":[[3,3]],"ms":2,"components":[[[1,1]],[[1,1]],[[1,1]]],"L":4}"#
        );
        let back: ProtographDoc = serde_json::from_str(&text).unwrap();
        assert_eq!(
            back.terminated().unwrap().unwrap(),
            couple_and_terminate(&s, 4).unwrap()
        );
        let plain: ProtographDoc = serde_json::from_str(r#"{"B": [[3,3]]}"#).unwrap();
        assert_eq!(plain.lift_source().unwrap().to_rows(), vec![vec![3, 3]]);
    }
}
