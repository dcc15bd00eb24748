//! Monte-Carlo experiments over the channel models and decoders.
//!
//! Every frame transmits the all-zero codeword and draws its noise from a
//! seed derived from the master seed, the grid point and the frame index.
//! Frames are decoded in parallel in fixed-size batches and merged in frame
//! order, so reports do not depend on the number of worker threads.

mod distance;
mod gain;
mod report;

pub use distance::{min_distance_bruteforce, DEFAULT_DIMENSION_CAP};
pub use gain::{
    convolutional_gain_experiment, gain_codes, gain_csv, GainCodes, GainConfig, GainRow,
    GAIN_MIN_FRAME_ERRORS,
};
pub use report::{report, Format, CSV_HEADER};

use std::path::PathBuf;
use std::time::Instant;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::channels::{bec_transmit, biawgn_transmit, frame_seed};
use crate::decoder::{
    bp_decode, peeling_decode, pipeline_decode, window_decode, DecodeResult, DecoderConfig,
    WindowConfig,
};
use crate::error::{Error, Result};
use crate::lifting::{
    lift, read_alist, to_tanner, ChainLayout, LiftSpec, SparseParityCheck, TannerGraph,
};
use crate::protograph::ProtographDoc;

/// Frames decoded per parallel batch before the stopping rule is checked.
const BATCH: usize = 32;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CodeSource {
    /// A base matrix document lifted by `lift`. With a spreading and a
    /// termination length the terminated chain is lifted.
    Protograph { doc: ProtographDoc, lift: LiftSpec },
    /// A parity-check matrix file; `sections` and `memory` describe the
    /// chain layout when the file holds a terminated chain.
    Alist {
        path: PathBuf,
        #[serde(default)]
        sections: Option<usize>,
        #[serde(default)]
        memory: Option<usize>,
    },
}

/// A parity-check matrix ready for decoding.
#[derive(Clone, Debug)]
pub struct Code {
    pub h: SparseParityCheck,
    pub graph: TannerGraph,
    pub layout: Option<ChainLayout>,
    /// `1 - m / n`.
    pub rate: f64,
}

impl Code {
    pub fn new(h: SparseParityCheck, layout: Option<ChainLayout>) -> Result<Self> {
        if let Some(layout) = &layout {
            layout.validate(&h)?;
        }
        let graph = to_tanner(&h)?;
        let rate = 1.0 - h.m() as f64 / h.n() as f64;
        Ok(Self {
            h,
            graph,
            layout,
            rate,
        })
    }

    pub fn n(&self) -> usize {
        self.h.n()
    }
}

impl CodeSource {
    pub fn build(&self) -> Result<Code> {
        match self {
            CodeSource::Protograph { doc, lift: spec } => {
                let h = lift(&doc.lift_source()?, spec)?;
                let layout = doc
                    .terminated()?
                    .map(|t| ChainLayout::from_terminated(&t, spec.size));
                Code::new(h, layout)
            }
            CodeSource::Alist {
                path,
                sections,
                memory,
            } => {
                let h = read_alist(&std::fs::read_to_string(path)?)?;
                let layout = match (sections, memory) {
                    (Some(l), Some(ms)) => Some(ChainLayout::infer(&h, *l, *ms)?),
                    (None, None) => None,
                    _ => {
                        return Err(Error::InvalidConfig(
                            "chain layout needs both sections and memory".into(),
                        ))
                    }
                };
                Code::new(h, layout)
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ChannelGrid {
    /// Erasure probabilities.
    Bec(Vec<f64>),
    /// Eb/N0 values in dB.
    Awgn(Vec<f64>),
}

impl ChannelGrid {
    pub fn points(&self) -> &[f64] {
        match self {
            ChannelGrid::Bec(p) | ChannelGrid::Awgn(p) => p,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Architecture {
    Batch,
    Window(WindowConfig),
    Pipeline,
    /// Erasure channel only.
    Peeling,
}

/// Everything but the code: what to run at each grid point.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RunConfig {
    pub grid: ChannelGrid,
    pub arch: Architecture,
    #[serde(default)]
    pub decoder: DecoderConfig,
    pub max_frames: usize,
    #[serde(default = "default_target")]
    pub target_frame_errors: usize,
    #[serde(default)]
    pub seed: u64,
    /// Worker threads; `None` uses every core.
    #[serde(default)]
    pub threads: Option<usize>,
    /// Record wall-clock time. Off by default so reports are reproducible
    /// byte for byte.
    #[serde(default)]
    pub timing: bool,
}

fn default_target() -> usize {
    100
}

impl RunConfig {
    pub fn new(
        grid: ChannelGrid,
        arch: Architecture,
        decoder: DecoderConfig,
        max_frames: usize,
        seed: u64,
    ) -> Self {
        Self {
            grid,
            arch,
            decoder,
            max_frames,
            target_frame_errors: default_target(),
            seed,
            threads: None,
            timing: false,
        }
    }

    pub fn validate(&self, code: &Code) -> Result<()> {
        if self.grid.points().is_empty() {
            return Err(Error::InvalidConfig("channel grid is empty".into()));
        }
        if self.max_frames == 0 || self.target_frame_errors == 0 {
            return Err(Error::InvalidConfig(
                "frame budget and error target must be positive".into(),
            ));
        }
        if self.threads == Some(0) {
            return Err(Error::InvalidConfig("thread count must be positive".into()));
        }
        self.decoder.validate()?;
        match &self.grid {
            ChannelGrid::Bec(points) => {
                if let Some(&p) = points.iter().find(|p| !(0.0..=1.0).contains(*p)) {
                    return Err(Error::InvalidProbability(p));
                }
            }
            ChannelGrid::Awgn(points) => {
                if !(code.rate > 0.0) {
                    return Err(Error::InvalidRate(code.rate));
                }
                if points.iter().any(|p| !p.is_finite()) {
                    return Err(Error::InvalidConfig("Eb/N0 values must be finite".into()));
                }
                if self.arch == Architecture::Peeling {
                    return Err(Error::InvalidConfig("peeling decodes erasures only".into()));
                }
            }
        }
        match (&self.arch, &code.layout) {
            (Architecture::Window(w), Some(layout)) => w.validate(layout),
            (Architecture::Window(_) | Architecture::Pipeline, None) => Err(Error::InvalidConfig(
                "window and pipeline decoding need a chain layout".into(),
            )),
            _ => Ok(()),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ExperimentSpec {
    pub code: CodeSource,
    #[serde(flatten)]
    pub run: RunConfig,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SweepRecord {
    pub point: f64,
    pub frames: usize,
    pub bit_errs: usize,
    pub frame_errs: usize,
    pub ber: f64,
    pub fer: f64,
    pub mean_iters: f64,
    pub secs: f64,
}

pub fn simulate(spec: &ExperimentSpec) -> Result<Vec<SweepRecord>> {
    let code = spec.code.build()?;
    simulate_code(&code, &spec.run)
}

/// Runs the sweep on an already built code.
pub fn simulate_code(code: &Code, run: &RunConfig) -> Result<Vec<SweepRecord>> {
    run.validate(code)?;
    let mut builder = rayon::ThreadPoolBuilder::new();
    if let Some(threads) = run.threads {
        builder = builder.num_threads(threads);
    }
    let pool = builder
        .build()
        .map_err(|e| Error::InvalidConfig(format!("thread pool: {e}")))?;
    pool.install(|| {
        run.grid
            .points()
            .iter()
            .enumerate()
            .map(|(p, &point)| simulate_point(code, run, p as u64, point))
            .collect()
    })
}

struct FrameStats {
    bit_errs: usize,
    iterations: usize,
}

fn simulate_point(code: &Code, run: &RunConfig, index: u64, point: f64) -> Result<SweepRecord> {
    let start = Instant::now();
    let (mut frames, mut bit_errs, mut frame_errs, mut iterations) = (0, 0, 0, 0);
    'outer: while frames < run.max_frames {
        let batch_end = (frames + BATCH).min(run.max_frames);
        let stats: Vec<FrameStats> = (frames..batch_end)
            .into_par_iter()
            .map(|f| run_frame(code, run, point, frame_seed(run.seed, index, f as u64)))
            .collect::<Result<_>>()?;
        for s in stats {
            frames += 1;
            bit_errs += s.bit_errs;
            frame_errs += usize::from(s.bit_errs > 0);
            iterations += s.iterations;
            if frame_errs >= run.target_frame_errors {
                break 'outer;
            }
        }
    }
    let n = code.n() as f64;
    Ok(SweepRecord {
        point,
        frames,
        bit_errs,
        frame_errs,
        ber: bit_errs as f64 / (frames as f64 * n),
        fer: frame_errs as f64 / frames as f64,
        mean_iters: iterations as f64 / frames as f64,
        secs: if run.timing {
            start.elapsed().as_secs_f64()
        } else {
            0.0
        },
    })
}

fn run_frame(code: &Code, run: &RunConfig, point: f64, seed: u64) -> Result<FrameStats> {
    let zeros = vec![0u8; code.n()];
    let llrs = match run.grid {
        ChannelGrid::Bec(_) => {
            let out = bec_transmit(&zeros, point, seed)?;
            if run.arch == Architecture::Peeling {
                return Ok(stats(&peeling_decode(&code.h, &out, &run.decoder)?.result));
            }
            out.to_llrs(run.decoder.clip).0
        }
        ChannelGrid::Awgn(_) => biawgn_transmit(&zeros, point, code.rate, seed)?.0,
    };
    let result = decode(code, &run.arch, &llrs, &run.decoder)?;
    Ok(stats(&result))
}

/// Decodes one frame of channel LLRs with the chosen architecture.
pub fn decode(
    code: &Code,
    arch: &Architecture,
    llrs: &[f64],
    cfg: &DecoderConfig,
) -> Result<DecodeResult> {
    let layout = || {
        code.layout
            .ok_or_else(|| Error::InvalidConfig("architecture needs a chain layout".into()))
    };
    Ok(match arch {
        Architecture::Batch => bp_decode(&code.graph, llrs, cfg)?.result,
        Architecture::Window(w) => window_decode(&code.graph, &layout()?, llrs, w, cfg)?.result,
        Architecture::Pipeline => pipeline_decode(&code.graph, &layout()?, llrs, cfg)?.result,
        Architecture::Peeling => {
            return Err(Error::InvalidConfig(
                "peeling takes erasure symbols, not LLRs".into(),
            ))
        }
    })
}

/// Undecided bits hard-decide to 0, so they are counted separately.
fn stats(result: &DecodeResult) -> FrameStats {
    let ones = result.decisions.iter().filter(|&&d| d != 0).count();
    FrameStats {
        bit_errs: ones + result.residual_erasures,
        iterations: result.iterations,
    }
}
