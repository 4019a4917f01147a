//! Dijkstra and Yen search with a total order on paths: cost first, then the
//! lexicographic node-id sequence.
//!
//! Path costs are always the left fold of edge weights in path order,
//! starting from a per-pair base cost. Spur searches in Yen resume the fold
//! from the root cost, so every candidate's cost is bit-identical to what a
//! from-scratch evaluation of the same node list gives.

use std::cmp::{Ordering, Reverse};
use std::collections::{BTreeSet, BinaryHeap};

use super::{EdgeMetric, PathRecord};
use crate::network::{EdgeKey, NetworkGraph, NodeId, SdPair};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum CostModel {
    /// One per hop.
    HopCount,
    /// `Σ_{v ∈ path} 1/C_v`, high-closeness nodes being cheap. Each edge
    /// carries half of each endpoint's cost and the pair's two terminals
    /// contribute the other halves up front.
    CentralityCost,
    /// `−ln F` per edge, so the cheapest path maximises `Π F`.
    NegLogFidelity,
}

fn inverse_closeness(graph: &NetworkGraph, id: &NodeId) -> f64 {
    match graph.node(id).map(|n| n.closeness) {
        Some(c) if c > 0.0 => 1.0 / c,
        _ => f64::INFINITY,
    }
}

fn edge_weight(graph: &NetworkGraph, u: &NodeId, v: &NodeId, model: CostModel) -> f64 {
    match model {
        CostModel::HopCount => 1.0,
        CostModel::CentralityCost => {
            0.5 * inverse_closeness(graph, u) + 0.5 * inverse_closeness(graph, v)
        }
        CostModel::NegLogFidelity => {
            let f = graph.edge(u, v).and_then(|e| e.fidelity).unwrap_or(1.0);
            -f.max(f64::MIN_POSITIVE).ln()
        }
    }
}

fn base_cost(graph: &NetworkGraph, pair: &SdPair, model: CostModel) -> f64 {
    match model {
        CostModel::CentralityCost => {
            0.5 * inverse_closeness(graph, &pair.source)
                + 0.5 * inverse_closeness(graph, &pair.destination)
        }
        _ => 0.0,
    }
}

/// Cost of an explicit node sequence under `model`.
pub fn path_cost(graph: &NetworkGraph, nodes: &[NodeId], model: CostModel) -> f64 {
    let (Some(first), Some(last)) = (nodes.first(), nodes.last()) else {
        return 0.0;
    };
    let pair = SdPair::new(first.clone(), last.clone());
    nodes
        .windows(2)
        .fold(base_cost(graph, &pair, model), |acc, w| {
            acc + edge_weight(graph, &w[0], &w[1], model)
        })
}

#[derive(Debug, Clone)]
struct Label {
    cost: f64,
    nodes: Vec<NodeId>,
}

impl PartialEq for Label {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}

impl Eq for Label {}

impl PartialOrd for Label {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Label {
    fn cmp(&self, other: &Self) -> Ordering {
        self.cost
            .total_cmp(&other.cost)
            .then_with(|| self.nodes.cmp(&other.nodes))
    }
}

/// Label-setting search from `from` to `to` starting at `init_cost`, never
/// entering `banned_nodes` or crossing `banned_edges`. Returns the minimum
/// label in (cost, node sequence) order.
fn search(
    graph: &NetworkGraph,
    from: &NodeId,
    to: &NodeId,
    model: CostModel,
    init_cost: f64,
    banned_nodes: &BTreeSet<NodeId>,
    banned_edges: &BTreeSet<EdgeKey>,
) -> Option<Label> {
    let mut heap = BinaryHeap::new();
    let mut settled = BTreeSet::new();
    heap.push(Reverse(Label {
        cost: init_cost,
        nodes: vec![from.clone()],
    }));
    while let Some(Reverse(label)) = heap.pop() {
        let u = label.nodes.last().expect("non-empty label").clone();
        if !settled.insert(u.clone()) {
            continue;
        }
        if &u == to {
            return Some(label);
        }
        for v in graph.neighbors(&u) {
            if settled.contains(v)
                || banned_nodes.contains(v)
                || banned_edges.contains(&EdgeKey::between(&u, v))
            {
                continue;
            }
            let cost = label.cost + edge_weight(graph, &u, v, model);
            if !cost.is_finite() {
                continue;
            }
            let mut nodes = label.nodes.clone();
            nodes.push(v.clone());
            heap.push(Reverse(Label { cost, nodes }));
        }
    }
    None
}

fn to_record(graph: &NetworkGraph, label: Label) -> PathRecord {
    let edge_metrics = label
        .nodes
        .windows(2)
        .map(|w| {
            let e = graph.edge(&w[0], &w[1]).expect("path follows graph edges");
            EdgeMetric {
                fidelity: e.fidelity.unwrap_or(f64::NAN),
                trace_distance: e.trace_distance.unwrap_or(f64::NAN),
            }
        })
        .collect();
    PathRecord {
        nodes: label.nodes,
        cost: label.cost,
        edge_metrics,
    }
}

fn endpoints_usable(graph: &NetworkGraph, pair: &SdPair) -> bool {
    pair.source != pair.destination
        && graph.contains_node(&pair.source)
        && graph.contains_node(&pair.destination)
}

/// Cheapest path under `model`, ties broken by the lexicographically
/// smallest node sequence. `None` when the destination is unreachable.
pub fn dijkstra_shortest_path(
    graph: &NetworkGraph,
    pair: &SdPair,
    model: CostModel,
) -> Option<PathRecord> {
    if !endpoints_usable(graph, pair) {
        return None;
    }
    let none = BTreeSet::new();
    search(
        graph,
        &pair.source,
        &pair.destination,
        model,
        base_cost(graph, pair, model),
        &none,
        &BTreeSet::new(),
    )
    .map(|l| to_record(graph, l))
}

/// Up to `k` loopless paths in (cost, node sequence) order.
pub fn yen_k_shortest_paths(
    graph: &NetworkGraph,
    pair: &SdPair,
    k: usize,
    model: CostModel,
) -> Vec<PathRecord> {
    if k == 0 || !endpoints_usable(graph, pair) {
        return Vec::new();
    }
    let no_nodes = BTreeSet::new();
    let no_edges = BTreeSet::new();
    let Some(first) = search(
        graph,
        &pair.source,
        &pair.destination,
        model,
        base_cost(graph, pair, model),
        &no_nodes,
        &no_edges,
    ) else {
        return Vec::new();
    };

    let mut accepted: Vec<Label> = vec![first];
    let mut candidates: BTreeSet<Label> = BTreeSet::new();
    while accepted.len() < k {
        let prev = accepted.last().expect("non-empty").nodes.clone();
        let mut root_cost = base_cost(graph, pair, model);
        for j in 0..prev.len() - 1 {
            if j > 0 {
                root_cost += edge_weight(graph, &prev[j - 1], &prev[j], model);
            }
            let root = &prev[..=j];
            let spur = &prev[j];
            let banned_edges: BTreeSet<EdgeKey> = accepted
                .iter()
                .filter(|p| p.nodes.len() > j + 1 && &p.nodes[..=j] == root)
                .map(|p| EdgeKey::between(&p.nodes[j], &p.nodes[j + 1]))
                .collect();
            let banned_nodes: BTreeSet<NodeId> = root[..j].iter().cloned().collect();
            if let Some(spur_label) = search(
                graph,
                spur,
                &pair.destination,
                model,
                root_cost,
                &banned_nodes,
                &banned_edges,
            ) {
                let mut nodes = root[..j].to_vec();
                nodes.extend(spur_label.nodes);
                candidates.insert(Label {
                    cost: spur_label.cost,
                    nodes,
                });
            }
        }
        let next = loop {
            match candidates.pop_first() {
                None => break None,
                Some(c) if accepted.iter().any(|a| a.nodes == c.nodes) => continue,
                Some(c) => break Some(c),
            }
        };
        match next {
            Some(c) => accepted.push(c),
            None => break,
        }
    }
    accepted.into_iter().map(|l| to_record(graph, l)).collect()
}
