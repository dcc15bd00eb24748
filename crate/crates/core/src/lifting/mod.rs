//! Graph lifting of base matrices into binary parity-check matrices.
//!
//! A base entry of multiplicity `w` becomes the sum of `w` disjoint `M x M`
//! permutation matrices. Base edge `(r, c)` with permutation `p` maps to the
//! lifted edges `(r M + k, c M + p(k))`; a circulant with shift `s` uses
//! `p(k) = (k + s) mod M`.

mod alist;
mod girth;
mod sparse;
mod tanner;
mod unwrap;

pub use alist::{read_alist, write_alist};
pub use girth::{base_girth, girth};
pub use sparse::SparseParityCheck;
pub use tanner::{to_tanner, TannerGraph};
pub use unwrap::{unwrap_block_parity_check, Tile, UnwrappedCode};

use rand::seq::{index, SliceRandom};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::protograph::{IntMatrix, TerminatedBaseMatrix};

/// Rejection-resampling cap for drawing a permutation disjoint from the
/// ones already placed on the same base entry.
pub const PERMUTATION_RETRY_CAP: usize = 1000;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum LiftStyle {
    /// Independent uniformly random permutations (seeded Fisher-Yates).
    RandomPermutation { seed: u64 },
    /// Circulant permutations with shifts drawn without replacement per entry.
    Circulant { seed: u64 },
    /// Circulant permutations with caller-chosen shifts, indexed
    /// `[row][col][parallel edge]`.
    CirculantShifts { shifts: Vec<Vec<Vec<usize>>> },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LiftSpec {
    /// Lift size `M`.
    pub size: usize,
    pub style: LiftStyle,
}

impl LiftSpec {
    pub fn permutation(size: usize, seed: u64) -> Self {
        Self {
            size,
            style: LiftStyle::RandomPermutation { seed },
        }
    }

    pub fn circulant(size: usize, seed: u64) -> Self {
        Self {
            size,
            style: LiftStyle::Circulant { seed },
        }
    }
}

/// Lifts `base` into an `M rows x M cols` larger binary matrix.
pub fn lift(base: &IntMatrix, spec: &LiftSpec) -> Result<SparseParityCheck> {
    let size = spec.size;
    if size == 0 {
        return Err(Error::InvalidConfig("lift size must be at least 1".into()));
    }
    if let LiftStyle::CirculantShifts { shifts } = &spec.style {
        if shifts.len() != base.rows() || shifts.iter().any(|r| r.len() != base.cols()) {
            return Err(Error::ShiftShape(format!(
                "expected {}x{} shift lists",
                base.rows(),
                base.cols()
            )));
        }
    }
    let mut rng = match spec.style {
        LiftStyle::RandomPermutation { seed } | LiftStyle::Circulant { seed } => {
            ChaCha8Rng::seed_from_u64(seed)
        }
        LiftStyle::CirculantShifts { .. } => ChaCha8Rng::seed_from_u64(0),
    };
    let mut rows: Vec<Vec<usize>> = vec![Vec::new(); base.rows() * size];
    for r in 0..base.rows() {
        for c in 0..base.cols() {
            let w = base.get(r, c);
            if w == 0 {
                continue;
            }
            if w as usize > size {
                return Err(Error::LiftTooSmall {
                    multiplicity: w,
                    lift: size,
                });
            }
            let perms: Vec<Vec<usize>> = match &spec.style {
                LiftStyle::RandomPermutation { .. } => random_disjoint_permutations(
                    &mut rng, w as usize, size,
                )
                .ok_or(Error::PermutationRetryExhausted {
                    row: r,
                    col: c,
                    attempts: PERMUTATION_RETRY_CAP,
                })?,
                LiftStyle::Circulant { .. } => index::sample(&mut rng, size, w as usize)
                    .into_iter()
                    .map(|s| circulant(size, s))
                    .collect(),
                LiftStyle::CirculantShifts { shifts } => {
                    let list = &shifts[r][c];
                    if list.len() != w as usize {
                        return Err(Error::ShiftShape(format!(
                            "entry ({r}, {c}) has multiplicity {w} but {} shifts",
                            list.len()
                        )));
                    }
                    let mut seen = vec![false; size];
                    for &s in list {
                        let s = s % size;
                        if std::mem::replace(&mut seen[s], true) {
                            return Err(Error::DuplicateShift {
                                row: r,
                                col: c,
                                shift: s,
                            });
                        }
                    }
                    list.iter().map(|&s| circulant(size, s % size)).collect()
                }
            };
            for p in &perms {
                for (k, &pk) in p.iter().enumerate() {
                    rows[r * size + k].push(c * size + pk);
                }
            }
        }
    }
    SparseParityCheck::from_rows(base.cols() * size, rows)
}

fn circulant(size: usize, shift: usize) -> Vec<usize> {
    (0..size).map(|k| (k + shift) % size).collect()
}

/// Draws `w` permutations of `0..size` that never agree at any position, so
/// that their mod-2 sum has exactly `w` ones in each row and column.
fn random_disjoint_permutations(
    rng: &mut ChaCha8Rng,
    w: usize,
    size: usize,
) -> Option<Vec<Vec<usize>>> {
    let mut perms: Vec<Vec<usize>> = Vec::with_capacity(w);
    for _ in 0..w {
        let mut found = None;
        for _ in 0..PERMUTATION_RETRY_CAP {
            let mut p: Vec<usize> = (0..size).collect();
            p.shuffle(rng);
            if perms.iter().all(|q| q.iter().zip(&p).all(|(a, b)| a != b)) {
                found = Some(p);
                break;
            }
        }
        perms.push(found?);
    }
    Some(perms)
}

/// Section structure of a lifted terminated chain.
///
/// Variable section `t` holds `M c` consecutive columns and check section
/// `r` holds `M (c - b)` consecutive rows; variable section `t` only meets
/// check sections `t..=t + ms`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ChainLayout {
    /// Termination length `L`.
    pub sections: usize,
    /// Syndrome former memory `ms`.
    pub memory: usize,
    pub vars_per_section: usize,
    pub checks_per_section: usize,
}

impl ChainLayout {
    pub fn from_terminated(t: &TerminatedBaseMatrix, lift_size: usize) -> Self {
        let base = t.spreading().base();
        Self {
            sections: t.length(),
            memory: t.memory(),
            vars_per_section: lift_size * base.variable_types(),
            checks_per_section: lift_size * base.check_types(),
        }
    }

    /// Infers the section sizes of `h` from `L` and `ms` and checks that the
    /// matrix is banded accordingly.
    pub fn infer(h: &SparseParityCheck, sections: usize, memory: usize) -> Result<Self> {
        let check_sections = sections + memory;
        if sections == 0 || h.n() % sections != 0 || h.m() % check_sections != 0 {
            return Err(Error::InvalidConfig(format!(
                "{}x{} matrix does not split into {sections} sections with memory {memory}",
                h.m(),
                h.n()
            )));
        }
        let layout = Self {
            sections,
            memory,
            vars_per_section: h.n() / sections,
            checks_per_section: h.m() / check_sections,
        };
        layout.validate(h)?;
        Ok(layout)
    }

    pub fn check_sections(&self) -> usize {
        self.sections + self.memory
    }

    pub fn n(&self) -> usize {
        self.sections * self.vars_per_section
    }

    pub fn m(&self) -> usize {
        self.check_sections() * self.checks_per_section
    }

    #[inline]
    pub fn variable_section(&self, j: usize) -> usize {
        j / self.vars_per_section
    }

    #[inline]
    pub fn check_section(&self, i: usize) -> usize {
        i / self.checks_per_section
    }

    pub fn variable_range(&self, t: usize) -> std::ops::Range<usize> {
        t * self.vars_per_section..(t + 1) * self.vars_per_section
    }

    pub fn check_range(&self, r: usize) -> std::ops::Range<usize> {
        r * self.checks_per_section..(r + 1) * self.checks_per_section
    }

    /// Confirms the dimensions and the band structure of `h`.
    pub fn validate(&self, h: &SparseParityCheck) -> Result<()> {
        if h.n() != self.n() || h.m() != self.m() {
            return Err(Error::InvalidConfig(format!(
                "layout expects {}x{}, matrix is {}x{}",
                self.m(),
                self.n(),
                h.m(),
                h.n()
            )));
        }
        for (i, j) in h.edges() {
            let r = self.check_section(i);
            let t = self.variable_section(j);
            if r < t || r > t + self.memory {
                return Err(Error::InvalidConfig(format!(
                    "edge ({i}, {j}) leaves the coupling band"
                )));
            }
        }
        Ok(())
    }
}
