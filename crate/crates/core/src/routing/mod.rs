//! Path search and purification-aware routing.

mod baseline;
mod log;
mod paths;
mod tdpp;

use std::fmt;
use std::str::FromStr;

use crate::network::{EdgeKey, NodeId, SdPair};
use crate::Error;

pub use baseline::{baseline_route, BaselineKind};
pub use log::{format_decision_log, parse_decision_log, LoggedOutcome};
pub use paths::{dijkstra_shortest_path, path_cost, yen_k_shortest_paths, CostModel};
pub use tdpp::{
    fidelity_floor_predicate, path_maxima, purification_trigger, purify_selected_edge, tdpp_route,
    unsalvageable,
};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EdgeMetric {
    pub fidelity: f64,
    pub trace_distance: f64,
}

/// Simple path from source to destination.
#[derive(Debug, Clone, PartialEq)]
pub struct PathRecord {
    pub nodes: Vec<NodeId>,
    pub cost: f64,
    /// One entry per hop, in path order.
    pub edge_metrics: Vec<EdgeMetric>,
}

impl PathRecord {
    pub fn edges(&self) -> Vec<EdgeKey> {
        self.nodes
            .windows(2)
            .map(|w| EdgeKey::between(&w[0], &w[1]))
            .collect()
    }

    pub fn hop_count(&self) -> usize {
        self.nodes.len().saturating_sub(1)
    }

    /// Nodes joined with `>`, e.g. `s>r2>r3>d`.
    pub fn render(&self) -> String {
        self.nodes
            .iter()
            .map(NodeId::as_str)
            .collect::<Vec<_>>()
            .join(">")
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct PurificationDecision {
    /// Edge with the largest trace distance on the path.
    pub edge: EdgeKey,
    pub triggered: bool,
    pub d_max: f64,
    pub f_sel_edge: f64,
    /// Fidelity of `edge` before purification.
    pub f_before: f64,
    /// Fidelity of `edge` afterwards; equals `f_before` when not triggered.
    pub f_purified: f64,
    /// Trace distance of `edge` afterwards.
    pub d_purified: f64,
    pub rounds: u32,
}

/// Both purification predicates evaluated on one edge.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct EdgeTrigger {
    /// `D ≥ F`, the operative trigger.
    pub operative: bool,
    /// `F ≥ 1 − D/2`, recorded for analysis.
    pub fidelity_floor: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FailureReason {
    NoPath,
    CapacityExhausted,
    MemoryExhausted,
    FidelityBelowThreshold,
}

impl FailureReason {
    pub fn as_str(&self) -> &'static str {
        match self {
            Self::NoPath => "no_path",
            Self::CapacityExhausted => "capacity_exhausted",
            Self::MemoryExhausted => "memory_exhausted",
            Self::FidelityBelowThreshold => "fidelity_below_threshold",
        }
    }
}

impl fmt::Display for FailureReason {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for FailureReason {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self, Error> {
        Ok(match s {
            "no_path" => Self::NoPath,
            "capacity_exhausted" => Self::CapacityExhausted,
            "memory_exhausted" => Self::MemoryExhausted,
            "fidelity_below_threshold" => Self::FidelityBelowThreshold,
            _ => return Err(Error::Config(format!("unknown failure reason `{s}`"))),
        })
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct RoutingOutcome {
    /// Position of the pair in the request list.
    pub pair_index: usize,
    pub pair: SdPair,
    pub path: Option<PathRecord>,
    pub decision: Option<PurificationDecision>,
    pub edge_triggers: Vec<EdgeTrigger>,
    pub e2e_fidelity: f64,
    pub success: bool,
    pub failure: Option<FailureReason>,
    /// Sequential synchronisation slots the connection needs.
    pub slots: u32,
}

impl RoutingOutcome {
    pub(crate) fn failed(pair_index: usize, pair: SdPair, reason: FailureReason) -> Self {
        Self {
            pair_index,
            pair,
            path: None,
            decision: None,
            edge_triggers: Vec::new(),
            e2e_fidelity: 0.0,
            success: false,
            failure: Some(reason),
            slots: 0,
        }
    }

    /// Marks the outcome failed without dropping its path.
    pub fn fail(&mut self, reason: FailureReason) {
        self.success = false;
        self.failure = Some(reason);
    }

    /// Per-hop fidelities after applying any purification.
    pub fn effective_fidelities(&self) -> Vec<f64> {
        let Some(path) = &self.path else {
            return Vec::new();
        };
        path.edges()
            .iter()
            .zip(&path.edge_metrics)
            .map(|(key, m)| match &self.decision {
                Some(d) if d.triggered && &d.edge == key => d.f_purified,
                _ => m.fidelity,
            })
            .collect()
    }
}
