//! Density evolution for protograph ensembles on the binary erasure channel.
//!
//! Every unit of edge multiplicity is tracked as its own slot carrying a
//! variable-to-check and a check-to-variable erasure probability.

use num_rational::Ratio;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::protograph::{couple_and_terminate, design_rate, EdgeSpreading, IntMatrix};

/// A message probability below this counts as zero.
pub const CONVERGENCE_TOL: f64 = 1e-12;
pub const DEFAULT_MAX_ITER: usize = 20_000;
pub const DEFAULT_THRESHOLD_TOL: f64 = 1e-4;

/// Threshold of the `(J, K)`-regular ensemble from the scalar recursion
/// `x <- eps (1 - (1 - x)^(K-1))^(J-1)`.
pub fn scalar_de_threshold(j: u32, k: u32, tol: f64) -> f64 {
    let converges = |eps: f64| {
        let mut x = eps;
        for _ in 0..DEFAULT_MAX_ITER {
            if x < CONVERGENCE_TOL {
                return true;
            }
            let next = eps * (1.0 - (1.0 - x).powi(k as i32 - 1)).powi(j as i32 - 1);
            if next.to_bits() == x.to_bits() {
                return false;
            }
            x = next;
        }
        x < CONVERGENCE_TOL
    };
    bisect(converges, tol)
}

fn bisect(mut converges: impl FnMut(f64) -> bool, tol: f64) -> f64 {
    let (mut lo, mut hi) = (0.0, 1.0);
    while hi - lo > tol {
        let mid = 0.5 * (lo + hi);
        if converges(mid) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi)
}

/// Message state of protograph density evolution at a fixed erasure rate.
#[derive(Clone, Debug)]
pub struct DeState {
    eps: f64,
    col_slots: Vec<Vec<usize>>,
    row_slots: Vec<Vec<usize>>,
    v2c: Vec<f64>,
    c2v: Vec<f64>,
    iterations: usize,
}

impl DeState {
    pub fn new(base: &IntMatrix, eps: f64) -> Self {
        let mut col_slots = vec![Vec::new(); base.cols()];
        let mut row_slots = vec![Vec::new(); base.rows()];
        let mut slots = 0;
        for r in 0..base.rows() {
            for c in 0..base.cols() {
                for _ in 0..base.get(r, c) {
                    col_slots[c].push(slots);
                    row_slots[r].push(slots);
                    slots += 1;
                }
            }
        }
        Self {
            eps,
            col_slots,
            row_slots,
            v2c: vec![eps; slots],
            c2v: vec![1.0; slots],
            iterations: 0,
        }
    }

    /// One round of variable then check updates. Returns whether any
    /// message changed.
    pub fn step(&mut self) -> bool {
        let mut changed = false;
        for slots in &self.col_slots {
            for &s in slots {
                let prod: f64 = slots
                    .iter()
                    .filter(|&&o| o != s)
                    .map(|&o| self.c2v[o])
                    .product();
                let next = self.eps * prod;
                changed |= next.to_bits() != self.v2c[s].to_bits();
                self.v2c[s] = next;
            }
        }
        for slots in &self.row_slots {
            for &s in slots {
                let prod: f64 = slots
                    .iter()
                    .filter(|&&o| o != s)
                    .map(|&o| 1.0 - self.v2c[o])
                    .product();
                let next = 1.0 - prod;
                changed |= next.to_bits() != self.c2v[s].to_bits();
                self.c2v[s] = next;
            }
        }
        self.iterations += 1;
        changed
    }

    pub fn v2c(&self) -> &[f64] {
        &self.v2c
    }

    pub fn c2v(&self) -> &[f64] {
        &self.c2v
    }

    pub fn iterations(&self) -> usize {
        self.iterations
    }

    pub fn max_v2c(&self) -> f64 {
        self.v2c.iter().copied().fold(0.0, f64::max)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DeOutcome {
    pub converged: bool,
    /// Final variable-to-check erasure probabilities, one per slot.
    pub values: Vec<f64>,
    pub iterations: usize,
}

pub fn protograph_de_bec(base: &IntMatrix, eps: f64, max_iter: usize) -> DeOutcome {
    let mut state = DeState::new(base, eps);
    let mut converged = state.max_v2c() < CONVERGENCE_TOL;
    while !converged && state.iterations() < max_iter {
        let changed = state.step();
        converged = state.max_v2c() < CONVERGENCE_TOL;
        if !changed {
            break;
        }
    }
    DeOutcome {
        converged,
        values: state.v2c,
        iterations: state.iterations,
    }
}

/// Largest erasure rate at which density evolution converges, to within
/// `tol`.
pub fn de_threshold(base: &IntMatrix, tol: f64) -> f64 {
    de_threshold_with(base, tol, DEFAULT_MAX_ITER)
}

pub fn de_threshold_with(base: &IntMatrix, tol: f64, max_iter: usize) -> f64 {
    bisect(|eps| protograph_de_bec(base, eps, max_iter).converged, tol)
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SweepRow {
    #[serde(rename = "L")]
    pub length: usize,
    pub rate: Ratio<i64>,
    pub eps_star: f64,
}

/// Design rate and threshold of the terminated chain for each length.
pub fn saturation_sweep(
    spreading: &EdgeSpreading,
    lengths: &[usize],
    tol: f64,
) -> Result<Vec<SweepRow>> {
    lengths
        .par_iter()
        .map(|&length| {
            let t = couple_and_terminate(spreading, length)?;
            Ok(SweepRow {
                length,
                rate: design_rate(&t),
                eps_star: de_threshold(t.rendered(), tol),
            })
        })
        .collect()
}

pub fn sweep_csv(rows: &[SweepRow]) -> String {
    let mut out = String::from("L,rate_num,rate_den,eps_star\n");
    for row in rows {
        out.push_str(&format!(
            "{},{},{},{:.6}\n",
            row.length,
            row.rate.numer(),
            row.rate.denom(),
            row.eps_star
        ));
    }
    out
}
