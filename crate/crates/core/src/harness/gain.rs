use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use super::{simulate_code, Architecture, ChannelGrid, Code, RunConfig, SweepRecord};
use crate::decoder::{DecoderConfig, Stopping};
use crate::error::Result;
use crate::lifting::{lift, ChainLayout, LiftSpec};
use crate::protograph::{couple_and_terminate, edge_spread, BaseMatrix, SpreadRule};

/// Both codes need this many frame errors before their BERs are compared.
pub const GAIN_MIN_FRAME_ERRORS: usize = 50;

const MEMORY: usize = 2;

/// Block (3,6) code versus the terminated (3,6) chain with `ms = 2`, with
/// the block length equal to the chain's constraint length `(ms + 1) M c`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GainConfig {
    pub lift_size: usize,
    pub length: usize,
    /// Eb/N0 grid in dB.
    pub snrs: Vec<f64>,
    pub iterations: usize,
    pub max_frames: usize,
    pub target_frame_errors: usize,
    pub seed: u64,
    pub lift_seed: u64,
    pub threads: Option<usize>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GainRow {
    pub point: f64,
    pub block: SweepRecord,
    pub coupled: SweepRecord,
    /// Whether the coupled BER is strictly lower; `None` when either code
    /// has too few frame errors for the comparison to mean anything.
    pub ordering: Option<bool>,
}

pub struct GainCodes {
    pub block: Code,
    pub coupled: Code,
}

pub fn gain_codes(cfg: &GainConfig) -> Result<GainCodes> {
    let base = BaseMatrix::new(&[vec![3, 3]])?;
    let block_h = lift(
        base.matrix(),
        &LiftSpec::permutation(cfg.lift_size * (MEMORY + 1), cfg.lift_seed),
    )?;
    let chain = couple_and_terminate(
        &edge_spread(&base, MEMORY, SpreadRule::Uniform)?,
        cfg.length,
    )?;
    let sc_h = lift(
        chain.rendered(),
        &LiftSpec::permutation(cfg.lift_size, cfg.lift_seed),
    )?;
    Ok(GainCodes {
        block: Code::new(block_h, None)?,
        coupled: Code::new(
            sc_h,
            Some(ChainLayout::from_terminated(&chain, cfg.lift_size)),
        )?,
    })
}

pub fn convolutional_gain_experiment(cfg: &GainConfig) -> Result<Vec<GainRow>> {
    let codes = gain_codes(cfg)?;
    let run = RunConfig {
        grid: ChannelGrid::Awgn(cfg.snrs.clone()),
        arch: Architecture::Batch,
        decoder: DecoderConfig::new(cfg.iterations, Stopping::Syndrome),
        max_frames: cfg.max_frames,
        target_frame_errors: cfg.target_frame_errors,
        seed: cfg.seed,
        threads: cfg.threads,
        timing: false,
    };
    let block = simulate_code(&codes.block, &run)?;
    let coupled = simulate_code(&codes.coupled, &run)?;
    Ok(block
        .into_iter()
        .zip(coupled)
        .map(|(block, coupled)| {
            let enough = block.frame_errs >= GAIN_MIN_FRAME_ERRORS
                && coupled.frame_errs >= GAIN_MIN_FRAME_ERRORS;
            GainRow {
                point: block.point,
                ordering: enough.then_some(coupled.ber < block.ber),
                block,
                coupled,
            }
        })
        .collect())
}

pub fn gain_csv(rows: &[GainRow]) -> String {
    let mut out = String::from(
        "point,block_frames,block_frame_errs,block_ber,coupled_frames,coupled_frame_errs,coupled_ber,ordering\n",
    );
    for r in rows {
        let ordering = match r.ordering {
            Some(true) => "holds",
            Some(false) => "violated",
            None => "n/a",
        };
        let _ = writeln!(
            out,
            "{:.4},{},{},{:.6e},{},{},{:.6e},{ordering}",
            r.point,
            r.block.frames,
            r.block.frame_errs,
            r.block.ber,
            r.coupled.frames,
            r.coupled.frame_errs,
            r.coupled.ber
        );
    }
    out
}
