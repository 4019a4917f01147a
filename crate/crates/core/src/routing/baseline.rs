//! Purification-free comparison routers.

use std::fmt;
use std::str::FromStr;

use super::paths::{dijkstra_shortest_path, CostModel};
use super::tdpp::{check_ready, consume, first_feasible};
use super::{FailureReason, RoutingOutcome};
use crate::network::{NetworkGraph, SdPair};
use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum BaselineKind {
    /// Minimum-hop path.
    HopShortestNoPurification,
    /// Path maximising the product of link fidelities.
    GreedyMaxFidelity,
}

impl BaselineKind {
    pub fn cost_model(self) -> CostModel {
        match self {
            Self::HopShortestNoPurification => CostModel::HopCount,
            Self::GreedyMaxFidelity => CostModel::NegLogFidelity,
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Self::HopShortestNoPurification => "hop_shortest_no_purification",
            Self::GreedyMaxFidelity => "greedy_max_fidelity",
        }
    }
}

impl fmt::Display for BaselineKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for BaselineKind {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "hop_shortest_no_purification" => Ok(Self::HopShortestNoPurification),
            "greedy_max_fidelity" => Ok(Self::GreedyMaxFidelity),
            _ => Err(Error::Config(format!("unknown baseline `{s}`"))),
        }
    }
}

/// Routes each pair, in request order, on the single cheapest path under the
/// baseline's cost model. No purification and no fidelity requirement: a pair
/// succeeds whenever its path has free resources, and the end-to-end fidelity
/// is the product of link fidelities.
pub fn baseline_route(
    graph: &mut NetworkGraph,
    pairs: &[SdPair],
    kind: BaselineKind,
) -> Result<Vec<RoutingOutcome>> {
    check_ready(graph, pairs)?;
    let mut outcomes = Vec::with_capacity(pairs.len());
    for (idx, pair) in pairs.iter().enumerate() {
        let Some(path) = dijkstra_shortest_path(graph, pair, kind.cost_model()) else {
            outcomes.push(RoutingOutcome::failed(
                idx,
                pair.clone(),
                FailureReason::NoPath,
            ));
            continue;
        };
        let path = match first_feasible(graph, vec![path]) {
            Ok(p) => p,
            Err(reason) => {
                outcomes.push(RoutingOutcome::failed(idx, pair.clone(), reason));
                continue;
            }
        };
        let e2e: f64 = path.edge_metrics.iter().map(|m| m.fidelity).product();
        consume(graph, &path);
        outcomes.push(RoutingOutcome {
            pair_index: idx,
            pair: pair.clone(),
            path: Some(path),
            decision: None,
            edge_triggers: Vec::new(),
            e2e_fidelity: e2e,
            success: true,
            failure: None,
            slots: 1,
        });
    }
    Ok(outcomes)
}
