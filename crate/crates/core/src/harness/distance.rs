use crate::error::{Error, Result};
use crate::gf2::BitMatrix;
use crate::lifting::SparseParityCheck;

pub const DEFAULT_DIMENSION_CAP: usize = 28;

/// Minimum Hamming weight over all nonzero codewords, enumerated in Gray
/// code order over a nullspace basis so each step costs one vector addition.
pub fn min_distance_bruteforce(h: &SparseParityCheck, cap: usize) -> Result<usize> {
    let basis = BitMatrix::from_sparse(h).nullspace();
    let k = basis.len();
    if k == 0 {
        return Err(Error::ZeroCode);
    }
    if k > cap || k >= usize::BITS as usize {
        return Err(Error::DimensionTooLarge { k, cap });
    }
    let mut word = vec![0u64; basis[0].len()];
    let mut best = usize::MAX;
    for step in 1u64..1 << k {
        let flip = &basis[step.trailing_zeros() as usize];
        for (w, f) in word.iter_mut().zip(flip) {
            *w ^= f;
        }
        let weight = word.iter().map(|w| w.count_ones() as usize).sum();
        best = best.min(weight);
    }
    Ok(best)
}
