//! Trace-distance based path purification routing.
//!
//! Per request: candidate paths are enumerated by closeness-centrality cost,
//! the first one with a free EPR pair on every hop and a free qubit at every
//! node is taken, and if any hop has `D ≥ F` the hop with the largest trace
//! distance is purified to `√F̂`, where `F̂` is the best fidelity on the path.
//! End-to-end fidelity is the product of per-hop fidelities.

use super::paths::{yen_k_shortest_paths, CostModel};
use super::{EdgeTrigger, FailureReason, PathRecord, PurificationDecision, RoutingOutcome};
use crate::network::{coupled_trace_distance, EdgeRecord, NetworkGraph, SdPair};
use crate::{Error, Result};

/// Operative purification trigger: purify unless `D < F`.
pub fn purification_trigger(fidelity: f64, trace_distance: f64) -> bool {
    trace_distance >= fidelity
}

/// `F ≥ 1 − D/2`; evaluated and logged alongside the operative trigger.
pub fn fidelity_floor_predicate(fidelity: f64, trace_distance: f64) -> bool {
    fidelity >= 1.0 - 0.5 * trace_distance
}

/// Largest trace distance and largest fidelity over the hops of a path.
pub fn path_maxima(path: &PathRecord) -> Result<(f64, f64)> {
    if path.edge_metrics.is_empty() {
        return Err(Error::EmptyPath);
    }
    let d_max = path
        .edge_metrics
        .iter()
        .map(|m| m.trace_distance)
        .fold(f64::NEG_INFINITY, f64::max);
    let f_sel = path
        .edge_metrics
        .iter()
        .map(|m| m.fidelity)
        .fold(f64::NEG_INFINITY, f64::max);
    Ok((d_max, f_sel))
}

/// Purifies the hop with the largest trace distance (first such hop on ties).
pub fn purify_selected_edge(path: &PathRecord) -> Result<PurificationDecision> {
    let (d_max, f_sel_edge) = path_maxima(path)?;
    let idx = path
        .edge_metrics
        .iter()
        .position(|m| m.trace_distance == d_max)
        .expect("maximum is attained");
    let edge = path.edges().swap_remove(idx);
    let f_before = path.edge_metrics[idx].fidelity;

    let mut rounds = 0;
    let mut f_purified;
    loop {
        f_purified = f_sel_edge.sqrt();
        rounds += 1;
        if f_purified >= f_sel_edge {
            break;
        }
    }
    Ok(PurificationDecision {
        edge,
        triggered: true,
        d_max,
        f_sel_edge,
        f_before,
        f_purified,
        d_purified: coupled_trace_distance(f_purified),
        rounds,
    })
}

/// An edge that triggers purification and would still trigger after one
/// square-root purification of its own fidelity under the coupling.
pub fn unsalvageable(edge: &EdgeRecord) -> bool {
    match edge.metrics() {
        Some((f, d)) => {
            let purified = f.sqrt();
            purification_trigger(f, d)
                && purification_trigger(purified, coupled_trace_distance(purified))
        }
        None => true,
    }
}

enum Blocked {
    Capacity,
    Memory,
}

fn blocking_resource(graph: &NetworkGraph, path: &PathRecord) -> Option<Blocked> {
    for key in path.edges() {
        if graph.edge_by_key(&key).is_none_or(|e| e.capacity_free < 1) {
            return Some(Blocked::Capacity);
        }
    }
    for id in &path.nodes {
        if graph.node(id).is_none_or(|n| n.memory_free < 1) {
            return Some(Blocked::Memory);
        }
    }
    None
}

pub(crate) fn consume(graph: &mut NetworkGraph, path: &PathRecord) {
    for w in path.nodes.windows(2) {
        let e = graph.edge_mut(&w[0], &w[1]).expect("path edge");
        e.capacity_free -= 1;
    }
    for id in &path.nodes {
        graph.node_mut(id).expect("path node").memory_free -= 1;
    }
}

/// Picks the first candidate with resources, or the failure reason of the
/// first candidate when none fits.
pub(crate) fn first_feasible(
    graph: &NetworkGraph,
    candidates: Vec<PathRecord>,
) -> std::result::Result<PathRecord, FailureReason> {
    let mut first_reason = None;
    for path in candidates {
        match blocking_resource(graph, &path) {
            None => return Ok(path),
            Some(b) => {
                first_reason.get_or_insert(match b {
                    Blocked::Capacity => FailureReason::CapacityExhausted,
                    Blocked::Memory => FailureReason::MemoryExhausted,
                });
            }
        }
    }
    Err(first_reason.unwrap_or(FailureReason::NoPath))
}

pub(crate) fn check_ready(graph: &NetworkGraph, pairs: &[SdPair]) -> Result<()> {
    for pair in pairs {
        pair.validate(graph)?;
    }
    if let Some(e) = graph.edges().find(|e| e.metrics().is_none()) {
        return Err(Error::Graph(format!(
            "edge {} has no fidelity/trace distance",
            e.key
        )));
    }
    Ok(())
}

/// Routes `pairs` in priority order (descending larger-endpoint closeness,
/// then request order), consuming capacity and memory on `graph` for every
/// success. Outcomes are returned in request order.
pub fn tdpp_route(
    graph: &mut NetworkGraph,
    pairs: &[SdPair],
    k: usize,
    fidelity_threshold: f64,
) -> Result<Vec<RoutingOutcome>> {
    if k == 0 {
        return Err(Error::InvalidParameter {
            name: "k",
            value: 0.0,
        });
    }
    if !(fidelity_threshold > 0.0 && fidelity_threshold <= 1.0) {
        return Err(Error::InvalidParameter {
            name: "fidelity_threshold",
            value: fidelity_threshold,
        });
    }
    check_ready(graph, pairs)?;
    graph.update_closeness();
    let auxiliary = graph.filter_edges(|e| !unsalvageable(e));

    let priority = |p: &SdPair| {
        let c = |id| graph.node(id).map_or(0.0, |n| n.closeness);
        c(&p.source).max(c(&p.destination))
    };
    let mut order: Vec<usize> = (0..pairs.len()).collect();
    order.sort_by(|&a, &b| priority(&pairs[b]).total_cmp(&priority(&pairs[a])));

    let mut outcomes: Vec<Option<RoutingOutcome>> = vec![None; pairs.len()];
    for idx in order {
        let pair = &pairs[idx];
        let candidates = yen_k_shortest_paths(&auxiliary, pair, k, CostModel::CentralityCost);
        let outcome = if candidates.is_empty() {
            RoutingOutcome::failed(idx, pair.clone(), FailureReason::NoPath)
        } else {
            match first_feasible(graph, candidates) {
                Err(reason) => RoutingOutcome::failed(idx, pair.clone(), reason),
                Ok(path) => route_on(graph, idx, pair, path, fidelity_threshold)?,
            }
        };
        outcomes[idx] = Some(outcome);
    }
    Ok(outcomes
        .into_iter()
        .map(|o| o.expect("every pair routed"))
        .collect())
}

fn route_on(
    graph: &mut NetworkGraph,
    idx: usize,
    pair: &SdPair,
    path: PathRecord,
    threshold: f64,
) -> Result<RoutingOutcome> {
    let edge_triggers: Vec<EdgeTrigger> = path
        .edge_metrics
        .iter()
        .map(|m| EdgeTrigger {
            operative: purification_trigger(m.fidelity, m.trace_distance),
            fidelity_floor: fidelity_floor_predicate(m.fidelity, m.trace_distance),
        })
        .collect();
    let decision = if edge_triggers.iter().any(|t| t.operative) {
        purify_selected_edge(&path)?
    } else {
        let mut d = purify_selected_edge(&path)?;
        d.triggered = false;
        d.f_purified = d.f_before;
        d.d_purified = d.d_max;
        d.rounds = 0;
        d
    };
    let slots = 1 + decision.rounds;
    let mut outcome = RoutingOutcome {
        pair_index: idx,
        pair: pair.clone(),
        path: Some(path),
        decision: Some(decision),
        edge_triggers,
        e2e_fidelity: 0.0,
        success: false,
        failure: None,
        slots,
    };
    outcome.e2e_fidelity = outcome.effective_fidelities().iter().product();
    if outcome.e2e_fidelity >= threshold && outcome.e2e_fidelity > 0.0 {
        outcome.success = true;
        consume(graph, outcome.path.as_ref().expect("set above"));
    } else {
        outcome.failure = Some(FailureReason::FidelityBelowThreshold);
    }
    Ok(outcome)
}
