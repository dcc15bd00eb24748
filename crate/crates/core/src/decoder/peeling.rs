use super::{DecodeResult, DecoderConfig};
use crate::channels::{BecOutput, BecSymbol};
use crate::error::{Error, Result};
use crate::lifting::SparseParityCheck;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PeelingOutcome {
    pub result: DecodeResult,
    /// Positions still erased when decoding stopped.
    pub erased: Vec<bool>,
    /// Some fully known check had odd parity.
    pub contradiction: bool,
}

/// Erasure decoding by iteratively resolving checks with a single erased
/// neighbour. Every round resolves all such checks at once, so a round
/// matches one flooding iteration of BP on the erasure channel.
pub fn peeling_decode(
    h: &SparseParityCheck,
    input: &BecOutput,
    cfg: &DecoderConfig,
) -> Result<PeelingOutcome> {
    cfg.validate()?;
    if input.len() != h.n() {
        return Err(Error::LengthMismatch {
            expected: h.n(),
            got: input.len(),
        });
    }
    let mut erased: Vec<bool> = input
        .symbols()
        .iter()
        .map(|&s| s == BecSymbol::Erased)
        .collect();
    let mut values: Vec<u8> = input
        .symbols()
        .iter()
        .map(|&s| u8::from(s == BecSymbol::One))
        .collect();
    let mut missing = vec![0usize; h.m()];
    let mut parity = vec![0u8; h.m()];
    for (i, row) in h.rows().iter().enumerate() {
        for &j in row {
            if erased[j] {
                missing[i] += 1;
            } else {
                parity[i] ^= values[j];
            }
        }
    }

    let mut rounds = 0;
    loop {
        let frontier: Vec<usize> = (0..h.m()).filter(|&i| missing[i] == 1).collect();
        if frontier.is_empty() || rounds == cfg.max_iterations {
            break;
        }
        rounds += 1;
        let resolved: Vec<(usize, u8)> = frontier
            .iter()
            .filter_map(|&i| {
                h.row(i)
                    .iter()
                    .find(|&&j| erased[j])
                    .map(|&j| (j, parity[i]))
            })
            .collect();
        for (j, bit) in resolved {
            if !erased[j] {
                continue;
            }
            erased[j] = false;
            values[j] = bit;
            for &i in h.col(j) {
                missing[i] -= 1;
                parity[i] ^= bit;
            }
        }
    }

    let contradiction = (0..h.m()).any(|i| missing[i] == 0 && parity[i] == 1);
    let residual_erasures = erased.iter().filter(|&&e| e).count();
    for (v, &e) in values.iter_mut().zip(&erased) {
        if e {
            *v = 0;
        }
    }
    Ok(PeelingOutcome {
        result: DecodeResult {
            decisions: values,
            iterations: rounds,
            converged: residual_erasures == 0 && !contradiction,
            residual_erasures,
        },
        erased,
        contradiction,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn chain() -> SparseParityCheck {
        SparseParityCheck::from_dense(&[vec![1, 1, 0, 0], vec![0, 1, 1, 0], vec![0, 0, 1, 1]])
            .unwrap()
    }

    #[test]
    fn no_erasures() {
        let input = BecOutput(vec![BecSymbol::Zero; 4]);
        let out = peeling_decode(&chain(), &input, &DecoderConfig::default()).unwrap();
        assert!(out.result.converged);
        assert_eq!(out.result.iterations, 0);
    }

    #[test]
    fn all_erased() {
        let input = BecOutput(vec![BecSymbol::Erased; 4]);
        let out = peeling_decode(&chain(), &input, &DecoderConfig::default()).unwrap();
        assert_eq!(out.result.residual_erasures, 4);
        assert!(!out.result.converged);
    }

    #[test]
    fn peels_a_chain() {
        let input = BecOutput(vec![
            BecSymbol::One,
            BecSymbol::Erased,
            BecSymbol::Erased,
            BecSymbol::Erased,
        ]);
        let out = peeling_decode(&chain(), &input, &DecoderConfig::default()).unwrap();
        assert_eq!(out.result.decisions, vec![1, 1, 1, 1]);
        assert_eq!(out.result.iterations, 3);
        assert!(out.result.converged);
        let capped = peeling_decode(
            &chain(),
            &input,
            &DecoderConfig::new(1, super::super::Stopping::None),
        )
        .unwrap();
        assert_eq!(capped.result.residual_erasures, 2);
    }

    #[test]
    fn contradiction_flagged() {
        let input = BecOutput(vec![
            BecSymbol::One,
            BecSymbol::Zero,
            BecSymbol::Zero,
            BecSymbol::Zero,
        ]);
        let out = peeling_decode(&chain(), &input, &DecoderConfig::default()).unwrap();
        assert!(out.contradiction);
        assert!(!out.result.converged);
    }
}
