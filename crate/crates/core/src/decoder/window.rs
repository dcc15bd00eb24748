use serde::{Deserialize, Serialize};

use super::bp::mean_abs;
use super::{
    check_input, check_satisfied, hard_decision, validate_stopping, DecodeResult, DecoderConfig,
    Messages, Stopping,
};
use crate::error::{Error, Result};
use crate::lifting::{ChainLayout, TannerGraph};

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct WindowConfig {
    /// Window size `W` in sections.
    pub size: usize,
    /// Iteration budget per window position.
    pub iterations: usize,
    pub stopping: Stopping,
}

impl WindowConfig {
    pub fn new(size: usize, iterations: usize, stopping: Stopping) -> Self {
        Self {
            size,
            iterations,
            stopping,
        }
    }

    pub fn validate(&self, layout: &ChainLayout) -> Result<()> {
        if self.size < layout.memory + 1 {
            return Err(Error::InvalidConfig(format!(
                "window of {} sections cannot span a constraint of {} sections",
                self.size,
                layout.memory + 1
            )));
        }
        if self.size > layout.sections {
            return Err(Error::InvalidConfig(format!(
                "window of {} sections exceeds the chain length {}",
                self.size, layout.sections
            )));
        }
        if self.iterations == 0 {
            return Err(Error::InvalidConfig(
                "at least one iteration per position is required".into(),
            ));
        }
        validate_stopping(self.stopping)
    }
}

/// Hard decisions for one emitted section.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SectionDecision {
    pub section: usize,
    pub decisions: Vec<u8>,
    pub llrs: Vec<f64>,
    /// Window position at which the section was emitted.
    pub position: usize,
    /// Iterations spent at that position.
    pub iterations: usize,
}

#[derive(Clone, Debug, PartialEq)]
pub struct WindowOutcome {
    pub sections: Vec<SectionDecision>,
    /// Whole-frame view; `iterations` sums over all positions.
    pub result: DecodeResult,
    pub llrs: Vec<f64>,
}

/// Sliding-window decoding of a terminated chain.
///
/// At position `t` the window holds variable sections `t..t + W`. A check
/// takes part when all its neighbours are either inside the window or
/// already decoded; decoded neighbours send their frozen total LLR (clipped)
/// as a constant message. After the position's iterations the oldest
/// section is emitted and frozen. The final position emits every remaining
/// section, so `W = L` runs plain flooding BP on the whole graph.
///
/// Check messages carry over from one position to the next.
pub fn window_decode(
    g: &TannerGraph,
    layout: &ChainLayout,
    llrs: &[f64],
    wcfg: &WindowConfig,
    cfg: &DecoderConfig,
) -> Result<WindowOutcome> {
    cfg.validate()?;
    wcfg.validate(layout)?;
    check_input(g, llrs)?;
    if g.num_checks() != layout.m() || g.num_variables() != layout.n() {
        return Err(Error::InvalidConfig(
            "graph does not match the chain layout".into(),
        ));
    }
    let (l, ms, w) = (layout.sections, layout.memory, wcfg.size);
    let clip = cfg.clip;
    let n = g.num_variables();
    let mut msgs = Messages::new(g);
    let mut totals = llrs.to_vec();
    let mut decisions = vec![0u8; n];
    let mut undecided = vec![false; n];
    let mut emitted = Vec::with_capacity(l);
    let mut total_iterations = 0;

    let last = l - w;
    for t in 0..=last {
        let final_position = t == last;
        let vars = layout.variable_range(t).start..layout.variable_range(t + w - 1).end;
        let active_end = if final_position {
            layout.check_sections()
        } else {
            t + w
        };
        let checks = layout.check_range(t).start..layout.check_range(active_end - 1).end;
        // checks whose every neighbour lies inside the window
        let inner_start = if t == 0 { 0 } else { t + ms };
        let inner = layout.check_range(inner_start.min(active_end)).start..checks.end;
        let targets = if final_position {
            vars.clone()
        } else {
            layout.variable_range(t)
        };

        let mut iterations = 0;
        while iterations < wcfg.iterations {
            iterations += 1;
            for j in vars.clone() {
                msgs.update_variable(g, j, llrs[j], clip);
            }
            let mut changed = false;
            for i in checks.clone() {
                changed |= msgs.update_check(g, i, clip);
            }
            for j in vars.clone() {
                totals[j] = msgs.total(g, j, llrs[j]);
                decisions[j] = hard_decision(totals[j]);
                undecided[j] = totals[j] == 0.0;
            }
            let stop = match wcfg.stopping {
                Stopping::None => false,
                Stopping::Syndrome => inner
                    .clone()
                    .all(|i| check_satisfied(g, i, &decisions, &undecided)),
                Stopping::LlrThreshold(theta) => mean_abs(&totals[targets.clone()]) >= theta,
            };
            if stop || !changed {
                break;
            }
        }
        total_iterations += iterations;

        let out_sections = if final_position { t..l } else { t..t + 1 };
        for s in out_sections {
            let range = layout.variable_range(s);
            for j in range.clone() {
                let frozen = totals[j].clamp(-clip, clip);
                for &e in g.variable_edges(j) {
                    msgs.v2c[e] = frozen;
                }
            }
            emitted.push(SectionDecision {
                section: s,
                decisions: decisions[range.clone()].to_vec(),
                llrs: totals[range].to_vec(),
                position: t,
                iterations,
            });
        }
    }

    let converged = (0..g.num_checks()).all(|i| check_satisfied(g, i, &decisions, &undecided));
    let residual_erasures = undecided.iter().filter(|&&u| u).count();
    Ok(WindowOutcome {
        sections: emitted,
        result: DecodeResult {
            decisions,
            iterations: total_iterations,
            converged,
            residual_erasures,
        },
        llrs: totals,
    })
}
