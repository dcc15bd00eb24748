//! Belief-propagation decoding.
//!
//! All soft decoders share the same node kernels, so the batch flooding
//! decoder, the sliding window decoder and the pipeline decoder perform
//! bit-identical arithmetic whenever they visit the same updates in the same
//! order. Messages are LLRs saturated at `±clip`; a total LLR of exactly
//! zero marks an undecided bit (an erasure on the BEC), which hard-decides
//! to 0 but never counts as satisfied.

mod bp;
mod latency;
mod peeling;
mod pipeline;
mod window;

pub use bp::{bp_decode, BpOutcome};
pub use latency::{latency_report, LatencyReport};
pub use peeling::{peeling_decode, PeelingOutcome};
pub use pipeline::{pipeline_decode, EmittedSection, PipelineDecoder, PipelineOutcome};
pub use window::{window_decode, SectionDecision, WindowConfig, WindowOutcome};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::lifting::TannerGraph;

pub const DEFAULT_CLIP: f64 = 25.0;

/// When to stop iterating before the iteration budget runs out.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Stopping {
    None,
    /// Stop once every (considered) check is satisfied by decided bits.
    Syndrome,
    /// Stop once the mean absolute total LLR of the target bits reaches the
    /// threshold. Experimental.
    LlrThreshold(f64),
}

impl std::str::FromStr for Stopping {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "none" => Ok(Stopping::None),
            "syndrome" => Ok(Stopping::Syndrome),
            _ => {
                let theta = s
                    .strip_prefix("llr:")
                    .and_then(|v| v.parse::<f64>().ok())
                    .ok_or_else(|| Error::InvalidConfig(format!("unknown stopping rule {s:?}")))?;
                Ok(Stopping::LlrThreshold(theta))
            }
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct DecoderConfig {
    pub max_iterations: usize,
    pub stopping: Stopping,
    pub clip: f64,
}

impl Default for DecoderConfig {
    fn default() -> Self {
        Self {
            max_iterations: 100,
            stopping: Stopping::Syndrome,
            clip: DEFAULT_CLIP,
        }
    }
}

impl DecoderConfig {
    pub fn new(max_iterations: usize, stopping: Stopping) -> Self {
        Self {
            max_iterations,
            stopping,
            ..Self::default()
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.max_iterations == 0 {
            return Err(Error::InvalidConfig(
                "at least one iteration is required".into(),
            ));
        }
        if !(self.clip > 0.0 && self.clip.is_finite()) {
            return Err(Error::InvalidConfig(format!(
                "clip {} must be positive",
                self.clip
            )));
        }
        validate_stopping(self.stopping)
    }
}

pub(crate) fn validate_stopping(stopping: Stopping) -> Result<()> {
    match stopping {
        Stopping::LlrThreshold(theta) if !(theta > 0.0 && theta.is_finite()) => Err(
            Error::InvalidConfig(format!("LLR threshold {theta} must be positive")),
        ),
        _ => Ok(()),
    }
}

/// Outcome of decoding one frame.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DecodeResult {
    pub decisions: Vec<u8>,
    pub iterations: usize,
    /// The decisions satisfy every check and no bit is undecided.
    pub converged: bool,
    /// Bits left undecided (total LLR exactly zero, or unresolved erasures).
    pub residual_erasures: usize,
}

#[inline]
pub(crate) fn hard_decision(total: f64) -> u8 {
    u8::from(total < 0.0)
}

pub(crate) fn check_input(g: &TannerGraph, llrs: &[f64]) -> Result<()> {
    if llrs.len() != g.num_variables() {
        return Err(Error::LengthMismatch {
            expected: g.num_variables(),
            got: llrs.len(),
        });
    }
    if let Some(j) = llrs.iter().position(|x| !x.is_finite()) {
        return Err(Error::NonFiniteLlr(j));
    }
    Ok(())
}

/// Per-edge message storage shared by the soft decoders.
pub(crate) struct Messages {
    pub v2c: Vec<f64>,
    pub c2v: Vec<f64>,
    tanh: Vec<f64>,
    prefix: Vec<f64>,
}

impl Messages {
    pub fn new(g: &TannerGraph) -> Self {
        Self {
            v2c: vec![0.0; g.num_edges()],
            c2v: vec![0.0; g.num_edges()],
            tanh: Vec::with_capacity(g.max_check_degree()),
            prefix: Vec::with_capacity(g.max_check_degree()),
        }
    }

    /// Variable-to-check messages: channel LLR plus all other incoming
    /// check messages, saturated.
    #[inline]
    pub fn update_variable(&mut self, g: &TannerGraph, j: usize, llr: f64, clip: f64) {
        let edges = g.variable_edges(j);
        for (a, &e) in edges.iter().enumerate() {
            let mut s = llr;
            for (b, &f) in edges.iter().enumerate() {
                if a != b {
                    s += self.c2v[f];
                }
            }
            self.v2c[e] = s.clamp(-clip, clip);
        }
    }

    /// Check-to-variable messages by the tanh rule over the other incoming
    /// messages. Returns whether any outgoing message changed.
    #[inline]
    pub fn update_check(&mut self, g: &TannerGraph, i: usize, clip: f64) -> bool {
        let range = g.check_edges(i);
        let start = range.start;
        self.tanh.clear();
        self.tanh
            .extend(self.v2c[range].iter().map(|&x| (0.5 * x).tanh()));
        // exclusive products from a prefix pass and a suffix pass
        self.prefix.clear();
        let mut acc = 1.0;
        for &t in &self.tanh {
            self.prefix.push(acc);
            acc *= t;
        }
        let mut changed = false;
        let mut suffix = 1.0;
        for k in (0..self.tanh.len()).rev() {
            let p = self.prefix[k] * suffix;
            suffix *= self.tanh[k];
            // |p| <= 1, so atanh is at most infinite and the clamp saturates it
            let msg = (2.0 * p.atanh()).clamp(-clip, clip);
            let e = start + k;
            changed |= msg.to_bits() != self.c2v[e].to_bits();
            self.c2v[e] = msg;
        }
        changed
    }

    /// Channel LLR plus every incoming check message.
    #[inline]
    pub fn total(&self, g: &TannerGraph, j: usize, llr: f64) -> f64 {
        g.variable_edges(j)
            .iter()
            .fold(llr, |s, &e| s + self.c2v[e])
    }
}

/// Whether check `i` has even parity under `decisions` with every
/// neighbour decided.
#[inline]
pub(crate) fn check_satisfied(
    g: &TannerGraph,
    i: usize,
    decisions: &[u8],
    undecided: &[bool],
) -> bool {
    let mut parity = 0u8;
    for e in g.check_edges(i) {
        let j = g.edge_variable(e);
        if undecided[j] {
            return false;
        }
        parity ^= decisions[j];
    }
    parity == 0
}
