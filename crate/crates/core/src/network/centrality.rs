use std::collections::{BTreeMap, VecDeque};

use super::{NetworkGraph, NodeId};
use crate::{Error, Result};

/// Breadth-first hop distances from `source` to every reachable node,
/// including `source` itself at distance 0.
pub fn hop_distances(graph: &NetworkGraph, source: &NodeId) -> BTreeMap<NodeId, usize> {
    let mut dist = BTreeMap::new();
    if !graph.contains_node(source) {
        return dist;
    }
    dist.insert(source.clone(), 0);
    let mut queue = VecDeque::from([source.clone()]);
    while let Some(u) = queue.pop_front() {
        let du = dist[&u];
        for v in graph.neighbors(&u) {
            if !dist.contains_key(v) {
                dist.insert(v.clone(), du + 1);
                queue.push_back(v.clone());
            }
        }
    }
    dist
}

pub(super) fn closeness(graph: &NetworkGraph, node: &NodeId) -> Result<f64> {
    if !graph.contains_node(node) {
        return Err(Error::UnknownNode(node.to_string()));
    }
    let dist = hop_distances(graph, node);
    // N is the size of the node's component.
    let others = dist.len() - 1;
    let total: usize = dist.values().sum();
    if others == 0 {
        return Ok(0.0);
    }
    Ok(others as f64 / total as f64)
}
