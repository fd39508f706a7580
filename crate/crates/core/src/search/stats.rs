use std::fmt;
use std::time::Duration;

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Statistics {
    pub nodes: u64,
    /// Failed positive decisions.
    pub wrong_decisions: u64,
    pub backtracks: u64,
    pub propagator_calls: u64,
    pub removals: u64,
    pub runs: u64,
    pub solutions: u64,
    pub nogoods: u64,
    /// Bounded searches run by the increasing and dichotomic strategies.
    pub probes: u64,
    pub elapsed: Duration,
}

impl fmt::Display for Statistics {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "nodes={} wrong={} backtracks={} calls={} removals={} runs={} solutions={} nogoods={} probes={} time={}ms",
            self.nodes,
            self.wrong_decisions,
            self.backtracks,
            self.propagator_calls,
            self.removals,
            self.runs,
            self.solutions,
            self.nogoods,
            self.probes,
            self.elapsed.as_millis()
        )
    }
}
