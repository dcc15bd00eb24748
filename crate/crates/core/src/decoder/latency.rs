use serde::{Deserialize, Serialize};

/// Decoding latency and memory of the two streaming architectures, in code
/// symbols.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LatencyReport {
    pub pipeline_sections: usize,
    pub pipeline_latency_symbols: usize,
    pub pipeline_memory_symbols: usize,
    pub window_latency_symbols: Option<usize>,
    pub window_memory_symbols: Option<usize>,
}

/// `iterations` processors spaced `ms + 1` sections apart, or a window of
/// `window` sections, over sections of `lift_size * c` symbols.
pub fn latency_report(
    iterations: usize,
    window: Option<usize>,
    lift_size: usize,
    c: usize,
    ms: usize,
) -> LatencyReport {
    let section = lift_size * c;
    let pipeline_sections = iterations * (ms + 1);
    LatencyReport {
        pipeline_sections,
        pipeline_latency_symbols: pipeline_sections * section,
        pipeline_memory_symbols: pipeline_sections * section,
        window_latency_symbols: window.map(|w| w * section),
        window_memory_symbols: window.map(|w| w * section),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pipeline_latency() {
        let r = latency_report(100, None, 500, 2, 2);
        assert_eq!(r.pipeline_latency_symbols, 300_000);
        assert_eq!(r.pipeline_sections, 300);
        assert_eq!(r.window_latency_symbols, None);
    }

    #[test]
    fn window_latency() {
        assert_eq!(
            latency_report(1, Some(15), 500, 2, 2).window_latency_symbols,
            Some(15_000)
        );
    }

    #[test]
    fn window_matching_pipeline_span() {
        let r = latency_report(6, Some(18), 500, 2, 2);
        assert_eq!(r.window_latency_symbols, Some(r.pipeline_latency_symbols));
        assert_eq!(r.window_memory_symbols, Some(r.pipeline_memory_symbols));
    }
}
