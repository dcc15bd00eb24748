use super::{
    check_input, check_satisfied, hard_decision, DecodeResult, DecoderConfig, Messages, Stopping,
};
use crate::error::Result;
use crate::lifting::TannerGraph;

/// Decoded frame together with the final total LLRs.
#[derive(Clone, Debug, PartialEq)]
pub struct BpOutcome {
    pub result: DecodeResult,
    pub llrs: Vec<f64>,
}

/// Flooding sum-product decoding over the whole graph.
///
/// Each iteration updates every variable node, then every check node, then
/// evaluates the stopping rule. Decoding also ends early when an iteration
/// leaves every check message unchanged: the state is then a fixed point and
/// further iterations cannot alter the output.
pub fn bp_decode(g: &TannerGraph, llrs: &[f64], cfg: &DecoderConfig) -> Result<BpOutcome> {
    cfg.validate()?;
    check_input(g, llrs)?;
    let n = g.num_variables();
    let mut msgs = Messages::new(g);
    let mut totals = llrs.to_vec();
    let mut decisions = vec![0u8; n];
    let mut undecided = vec![false; n];
    let mut iterations = 0;
    while iterations < cfg.max_iterations {
        iterations += 1;
        for (j, &llr) in llrs.iter().enumerate() {
            msgs.update_variable(g, j, llr, cfg.clip);
        }
        let mut changed = false;
        for i in 0..g.num_checks() {
            changed |= msgs.update_check(g, i, cfg.clip);
        }
        for j in 0..n {
            totals[j] = msgs.total(g, j, llrs[j]);
            decisions[j] = hard_decision(totals[j]);
            undecided[j] = totals[j] == 0.0;
        }
        let stop = match cfg.stopping {
            Stopping::None => false,
            Stopping::Syndrome => {
                (0..g.num_checks()).all(|i| check_satisfied(g, i, &decisions, &undecided))
            }
            Stopping::LlrThreshold(theta) => mean_abs(&totals) >= theta,
        };
        if stop || !changed {
            break;
        }
    }
    let converged = (0..g.num_checks()).all(|i| check_satisfied(g, i, &decisions, &undecided));
    let residual_erasures = undecided.iter().filter(|&&u| u).count();
    Ok(BpOutcome {
        result: DecodeResult {
            decisions,
            iterations,
            converged,
            residual_erasures,
        },
        llrs: totals,
    })
}

pub(crate) fn mean_abs(values: &[f64]) -> f64 {
    if values.is_empty() {
        return 0.0;
    }
    values.iter().map(|x| x.abs()).sum::<f64>() / values.len() as f64
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::decoder::DEFAULT_CLIP;
    use crate::error::Error;
    use crate::lifting::{to_tanner, SparseParityCheck};

    fn graph(dense: &[Vec<u8>]) -> TannerGraph {
        to_tanner(&SparseParityCheck::from_dense(dense).unwrap()).unwrap()
    }

    #[test]
    fn certain_zeros_converge_at_once() {
        let g = graph(&[vec![1, 1, 0, 1], vec![0, 1, 1, 1], vec![1, 0, 1, 1]]);
        let out = bp_decode(&g, &[DEFAULT_CLIP; 4], &DecoderConfig::default()).unwrap();
        assert_eq!(out.result.decisions, vec![0; 4]);
        assert_eq!(out.result.iterations, 1);
        assert!(out.result.converged);
    }

    #[test]
    fn degree_two_check() {
        let g = graph(&[vec![1, 1]]);
        let cfg = DecoderConfig::new(1, Stopping::None);
        let out = bp_decode(&g, &[4.0, -4.0], &cfg).unwrap();
        // each variable hears the other's channel value through the check
        for &t in &out.llrs {
            assert!(t.abs() < 1e-9);
        }
        let out = bp_decode(&g, &[6.0, -4.0], &cfg).unwrap();
        assert_eq!(out.result.decisions, vec![0, 0]);
        let msg0 = out.llrs[0] - 6.0;
        let msg1 = out.llrs[1] + 4.0;
        assert!(msg0.abs() <= 4.0 + 1e-12 && msg1.abs() <= 6.0 + 1e-12);
        assert!((msg0 + 4.0).abs() < 1e-9 && (msg1 - 6.0).abs() < 1e-9);
    }

    #[test]
    fn decisions_follow_channel_without_conflict() {
        let g = graph(&[vec![1, 1]]);
        let out = bp_decode(&g, &[4.0, 3.0], &DecoderConfig::default()).unwrap();
        assert_eq!(out.result.decisions, vec![0, 0]);
        assert!(out.result.converged);
    }

    #[test]
    fn corrects_single_error() {
        // (7,4) Hamming code, bit 2 flipped
        let g = graph(&[
            vec![1, 1, 1, 0, 1, 0, 0],
            vec![1, 1, 0, 1, 0, 1, 0],
            vec![1, 0, 1, 1, 0, 0, 1],
        ]);
        let mut llrs = vec![3.0; 7];
        llrs[2] = -1.0;
        let out = bp_decode(&g, &llrs, &DecoderConfig::default()).unwrap();
        assert_eq!(out.result.decisions, vec![0; 7]);
        assert!(out.result.converged);
    }

    #[test]
    fn erasures_stay_undecided() {
        let g = graph(&[vec![1, 1, 1]]);
        let out = bp_decode(&g, &[0.0, 0.0, DEFAULT_CLIP], &DecoderConfig::default()).unwrap();
        assert_eq!(out.result.residual_erasures, 2);
        assert!(!out.result.converged);
        // one erasure is recovered by the check
        let out = bp_decode(
            &g,
            &[0.0, DEFAULT_CLIP, DEFAULT_CLIP],
            &DecoderConfig::default(),
        )
        .unwrap();
        assert_eq!(out.result.residual_erasures, 0);
        assert!(out.result.converged);
    }

    #[test]
    fn input_errors() {
        let g = graph(&[vec![1, 1]]);
        let cfg = DecoderConfig::default();
        assert!(matches!(
            bp_decode(&g, &[1.0], &cfg),
            Err(Error::LengthMismatch { .. })
        ));
        assert!(matches!(
            bp_decode(&g, &[1.0, f64::NAN], &cfg),
            Err(Error::NonFiniteLlr(1))
        ));
    }

    #[test]
    fn llr_threshold_stop() {
        let g = graph(&[vec![1, 1, 0], vec![0, 1, 1]]);
        let cfg = DecoderConfig::new(50, Stopping::LlrThreshold(1.0));
        let out = bp_decode(&g, &[2.0, 2.0, 2.0], &cfg).unwrap();
        assert_eq!(out.result.iterations, 1);
    }
}
