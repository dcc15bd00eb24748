use serde::{Deserialize, Serialize};

use super::{check_input, check_satisfied, hard_decision, DecodeResult, DecoderConfig, Messages};
use crate::error::{Error, Result};
use crate::lifting::{ChainLayout, TannerGraph};

/// A decoded section leaving the pipeline.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct EmittedSection {
    pub section: usize,
    pub decisions: Vec<u8>,
    pub llrs: Vec<f64>,
    /// Time unit in which the section's channel values entered.
    pub arrival: usize,
    /// Time unit at whose end the decisions became available.
    pub emitted_at: usize,
}

impl EmittedSection {
    pub fn delay(&self) -> usize {
        self.emitted_at - self.arrival
    }
}

/// Streaming decoder built from `I` one-iteration processors.
///
/// One section enters per time unit. Processor `k` trails processor `k - 1`
/// by `ms + 1` sections, which is exactly the span of one constraint, so
/// processor `k` always sees the messages of iteration `k - 1`. Section `s`
/// leaves after `I (ms + 1)` time units with the decisions flooding BP would
/// reach after `I` iterations.
pub struct PipelineDecoder<'g> {
    graph: &'g TannerGraph,
    layout: ChainLayout,
    processors: usize,
    clip: f64,
    msgs: Messages,
    llrs: Vec<f64>,
    time: usize,
    received: usize,
}

impl<'g> PipelineDecoder<'g> {
    pub fn new(graph: &'g TannerGraph, layout: ChainLayout, cfg: &DecoderConfig) -> Result<Self> {
        cfg.validate()?;
        if graph.num_checks() != layout.m() || graph.num_variables() != layout.n() {
            return Err(Error::InvalidConfig(
                "graph does not match the chain layout".into(),
            ));
        }
        Ok(Self {
            graph,
            layout,
            processors: cfg.max_iterations,
            clip: cfg.clip,
            msgs: Messages::new(graph),
            llrs: vec![0.0; graph.num_variables()],
            time: 0,
            received: 0,
        })
    }

    /// Decoding delay in time units (sections).
    pub fn delay(&self) -> usize {
        self.processors * (self.layout.memory + 1)
    }

    /// Feeds the channel LLRs of the next section and advances one time unit.
    pub fn push(&mut self, section_llrs: &[f64]) -> Result<Vec<EmittedSection>> {
        if self.received == self.layout.sections {
            return Err(Error::InvalidConfig(
                "all sections were already received".into(),
            ));
        }
        let range = self.layout.variable_range(self.received);
        if section_llrs.len() != range.len() {
            return Err(Error::LengthMismatch {
                expected: range.len(),
                got: section_llrs.len(),
            });
        }
        if let Some(k) = section_llrs.iter().position(|x| !x.is_finite()) {
            return Err(Error::NonFiniteLlr(range.start + k));
        }
        self.llrs[range].copy_from_slice(section_llrs);
        self.received += 1;
        Ok(self.step())
    }

    /// Drains the pipeline once the input has ended.
    pub fn finish(&mut self) -> Vec<EmittedSection> {
        let mut out = Vec::new();
        while self.time < self.received + self.delay() - 1 {
            out.extend(self.step());
        }
        out
    }

    fn step(&mut self) -> Vec<EmittedSection> {
        let tau = self.time;
        let span = self.layout.memory + 1;
        let l = self.layout.sections;
        for k in 0..self.processors {
            let Some(t) = tau.checked_sub(k * span) else {
                break;
            };
            if t < l {
                for j in self.layout.variable_range(t) {
                    self.msgs
                        .update_variable(self.graph, j, self.llrs[j], self.clip);
                }
            }
            if t < self.layout.check_sections() {
                for i in self.layout.check_range(t) {
                    self.msgs.update_check(self.graph, i, self.clip);
                }
            }
        }
        self.time += 1;
        let mut out = Vec::new();
        if let Some(s) = (tau + 1).checked_sub(self.delay()) {
            if s < l {
                let range = self.layout.variable_range(s);
                let llrs: Vec<f64> = range
                    .map(|j| self.msgs.total(self.graph, j, self.llrs[j]))
                    .collect();
                out.push(EmittedSection {
                    section: s,
                    decisions: llrs.iter().map(|&x| hard_decision(x)).collect(),
                    llrs,
                    arrival: s,
                    emitted_at: tau + 1,
                });
            }
        }
        out
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct PipelineOutcome {
    pub sections: Vec<EmittedSection>,
    pub result: DecodeResult,
    pub llrs: Vec<f64>,
    pub delay: usize,
}

/// Runs a whole frame through a [`PipelineDecoder`] with `cfg.max_iterations`
/// processors.
pub fn pipeline_decode(
    g: &TannerGraph,
    layout: &ChainLayout,
    llrs: &[f64],
    cfg: &DecoderConfig,
) -> Result<PipelineOutcome> {
    check_input(g, llrs)?;
    let mut dec = PipelineDecoder::new(g, *layout, cfg)?;
    let mut sections = Vec::with_capacity(layout.sections);
    for t in 0..layout.sections {
        sections.extend(dec.push(&llrs[layout.variable_range(t)])?);
    }
    sections.extend(dec.finish());

    let mut totals = vec![0.0; g.num_variables()];
    for s in &sections {
        totals[layout.variable_range(s.section)].copy_from_slice(&s.llrs);
    }
    let decisions: Vec<u8> = totals.iter().map(|&x| hard_decision(x)).collect();
    let undecided: Vec<bool> = totals.iter().map(|&x| x == 0.0).collect();
    let converged = (0..g.num_checks()).all(|i| check_satisfied(g, i, &decisions, &undecided));
    Ok(PipelineOutcome {
        result: DecodeResult {
            decisions,
            iterations: cfg.max_iterations,
            converged,
            residual_erasures: undecided.iter().filter(|&&u| u).count(),
        },
        delay: dec.delay(),
        sections,
        llrs: totals,
    })
}
