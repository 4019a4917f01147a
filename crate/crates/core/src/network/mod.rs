//! Undirected quantum network graph with per-node memory and per-edge
//! capacity, fidelity and trace distance.

mod centrality;
mod sampling;
mod topology;
mod validate;

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use crate::quantum::{fidelity_uhlmann, trace_distance, DensityMatrix};
use crate::{Error, Result};

pub use centrality::hop_distances;
pub use sampling::{
    generate_random_graph, sample_edge_attributes, sample_edge_attributes_with, DEFAULT_CAPACITY,
    DEFAULT_MEMORY,
};
pub use topology::{load_topology, to_topology_document};
pub use validate::{validate_flow_constraints, Constraint, ValidationReport, Violation};

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct NodeId(String);

impl NodeId {
    pub fn new(id: impl Into<String>) -> Self {
        Self(id.into())
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }
}

impl fmt::Display for NodeId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl From<&str> for NodeId {
    fn from(s: &str) -> Self {
        Self(s.to_owned())
    }
}

impl From<String> for NodeId {
    fn from(s: String) -> Self {
        Self(s)
    }
}

/// Unordered node pair, stored with the smaller id first.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct EdgeKey(NodeId, NodeId);

impl EdgeKey {
    pub fn new(a: NodeId, b: NodeId) -> Self {
        if a <= b {
            Self(a, b)
        } else {
            Self(b, a)
        }
    }

    pub fn between(a: &NodeId, b: &NodeId) -> Self {
        Self::new(a.clone(), b.clone())
    }

    pub fn endpoints(&self) -> (&NodeId, &NodeId) {
        (&self.0, &self.1)
    }
}

impl fmt::Display for EdgeKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}-{}", self.0, self.1)
    }
}

/// Trace distance paired with a scalar fidelity when no density matrices are
/// attached: `D = clamp(2(1 − F), 0, 1)`.
pub fn coupled_trace_distance(fidelity: f64) -> f64 {
    (2.0 * (1.0 - fidelity)).clamp(0.0, 1.0)
}

#[derive(Debug, Clone, PartialEq)]
pub struct NodeRecord {
    pub id: NodeId,
    pub memory_total: u32,
    pub memory_free: u32,
    /// Cached closeness centrality; see [`NetworkGraph::update_closeness`].
    pub closeness: f64,
    /// Externally supplied centrality that overrides the computed value.
    pub pinned_closeness: Option<f64>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct EdgeRecord {
    pub key: EdgeKey,
    pub capacity_total: u32,
    pub capacity_free: u32,
    pub fidelity: Option<f64>,
    pub trace_distance: Option<f64>,
    pub states: Option<(DensityMatrix, DensityMatrix)>,
}

impl EdgeRecord {
    /// Scalar mode: sets `F` and derives `D` from the coupling.
    pub fn set_fidelity(&mut self, fidelity: f64) {
        self.fidelity = Some(fidelity);
        self.trace_distance = Some(coupled_trace_distance(fidelity));
        self.states = None;
    }

    /// Matrix mode: both metrics come from the attached pair of states.
    pub fn attach_states(&mut self, rho: DensityMatrix, sigma: DensityMatrix) -> Result<()> {
        self.fidelity = Some(fidelity_uhlmann(&rho, &sigma)?);
        self.trace_distance = Some(trace_distance(&rho, &sigma)?);
        self.states = Some((rho, sigma));
        Ok(())
    }

    /// `(fidelity, trace_distance)` once both are set.
    pub fn metrics(&self) -> Option<(f64, f64)> {
        Some((self.fidelity?, self.trace_distance?))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SdPair {
    pub source: NodeId,
    pub destination: NodeId,
}

impl SdPair {
    pub fn new(source: impl Into<NodeId>, destination: impl Into<NodeId>) -> Self {
        Self {
            source: source.into(),
            destination: destination.into(),
        }
    }

    pub fn validate(&self, graph: &NetworkGraph) -> Result<()> {
        if self.source == self.destination {
            return Err(Error::InvalidPair(format!(
                "source equals destination `{}`",
                self.source
            )));
        }
        for id in [&self.source, &self.destination] {
            if !graph.contains_node(id) {
                return Err(Error::UnknownNode(id.to_string()));
            }
        }
        Ok(())
    }
}

impl fmt::Display for SdPair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}->{}", self.source, self.destination)
    }
}

/// Simple undirected graph. Iteration order is always sorted by node id so
/// every algorithm built on top is deterministic.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct NetworkGraph {
    nodes: BTreeMap<NodeId, NodeRecord>,
    edges: BTreeMap<EdgeKey, EdgeRecord>,
    adjacency: BTreeMap<NodeId, BTreeSet<NodeId>>,
}

impl NetworkGraph {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add_node(
        &mut self,
        id: impl Into<NodeId>,
        memory_total: u32,
    ) -> Result<&mut NodeRecord> {
        let id = id.into();
        if self.nodes.contains_key(&id) {
            return Err(Error::Graph(format!("duplicate node `{id}`")));
        }
        self.adjacency.insert(id.clone(), BTreeSet::new());
        Ok(self.nodes.entry(id.clone()).or_insert(NodeRecord {
            id,
            memory_total,
            memory_free: memory_total,
            closeness: 0.0,
            pinned_closeness: None,
        }))
    }

    pub fn add_edge(
        &mut self,
        u: impl Into<NodeId>,
        v: impl Into<NodeId>,
        capacity: u32,
    ) -> Result<&mut EdgeRecord> {
        let (u, v) = (u.into(), v.into());
        if u == v {
            return Err(Error::Graph(format!("self-loop on `{u}`")));
        }
        for id in [&u, &v] {
            if !self.nodes.contains_key(id) {
                return Err(Error::Graph(format!("dangling endpoint `{id}`")));
            }
        }
        let key = EdgeKey::between(&u, &v);
        if self.edges.contains_key(&key) {
            return Err(Error::Graph(format!("duplicate edge {u} {v}")));
        }
        self.adjacency
            .get_mut(&u)
            .expect("checked")
            .insert(v.clone());
        self.adjacency.get_mut(&v).expect("checked").insert(u);
        Ok(self.edges.entry(key.clone()).or_insert(EdgeRecord {
            key,
            capacity_total: capacity,
            capacity_free: capacity,
            fidelity: None,
            trace_distance: None,
            states: None,
        }))
    }

    pub fn contains_node(&self, id: &NodeId) -> bool {
        self.nodes.contains_key(id)
    }

    pub fn node(&self, id: &NodeId) -> Option<&NodeRecord> {
        self.nodes.get(id)
    }

    pub fn node_mut(&mut self, id: &NodeId) -> Option<&mut NodeRecord> {
        self.nodes.get_mut(id)
    }

    pub fn edge(&self, u: &NodeId, v: &NodeId) -> Option<&EdgeRecord> {
        self.edges.get(&EdgeKey::between(u, v))
    }

    pub fn edge_by_key(&self, key: &EdgeKey) -> Option<&EdgeRecord> {
        self.edges.get(key)
    }

    pub fn edge_mut(&mut self, u: &NodeId, v: &NodeId) -> Option<&mut EdgeRecord> {
        self.edges.get_mut(&EdgeKey::between(u, v))
    }

    pub fn nodes(&self) -> impl Iterator<Item = &NodeRecord> {
        self.nodes.values()
    }

    pub fn nodes_mut(&mut self) -> impl Iterator<Item = &mut NodeRecord> {
        self.nodes.values_mut()
    }

    pub fn node_ids(&self) -> impl Iterator<Item = &NodeId> {
        self.nodes.keys()
    }

    pub fn edges(&self) -> impl Iterator<Item = &EdgeRecord> {
        self.edges.values()
    }

    pub fn edges_mut(&mut self) -> impl Iterator<Item = &mut EdgeRecord> {
        self.edges.values_mut()
    }

    /// Neighbours in ascending id order. Unknown ids have none.
    pub fn neighbors<'a>(&'a self, id: &NodeId) -> impl Iterator<Item = &'a NodeId> + 'a {
        self.adjacency.get(id).into_iter().flatten()
    }

    pub fn degree(&self, id: &NodeId) -> usize {
        self.adjacency.get(id).map_or(0, BTreeSet::len)
    }

    pub fn node_count(&self) -> usize {
        self.nodes.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn is_connected(&self) -> bool {
        match self.nodes.keys().next() {
            None => true,
            Some(first) => hop_distances(self, first).len() == self.nodes.len(),
        }
    }

    /// Copy of the graph keeping only edges accepted by `keep`.
    pub fn filter_edges(&self, keep: impl Fn(&EdgeRecord) -> bool) -> Self {
        let mut out = Self {
            nodes: self.nodes.clone(),
            edges: BTreeMap::new(),
            adjacency: self
                .nodes
                .keys()
                .map(|k| (k.clone(), BTreeSet::new()))
                .collect(),
        };
        for (key, edge) in &self.edges {
            if keep(edge) {
                let (a, b) = key.endpoints();
                out.adjacency.get_mut(a).expect("node").insert(b.clone());
                out.adjacency.get_mut(b).expect("node").insert(a.clone());
                out.edges.insert(key.clone(), edge.clone());
            }
        }
        out
    }

    pub fn set_uniform_capacity(&mut self, capacity: u32) {
        for e in self.edges.values_mut() {
            e.capacity_total = capacity;
            e.capacity_free = capacity;
        }
    }

    pub fn set_uniform_memory(&mut self, memory: u32) {
        for n in self.nodes.values_mut() {
            n.memory_total = memory;
            n.memory_free = memory;
        }
    }

    /// Restores every free counter to its total.
    pub fn reset_resources(&mut self) {
        for e in self.edges.values_mut() {
            e.capacity_free = e.capacity_total;
        }
        for n in self.nodes.values_mut() {
            n.memory_free = n.memory_total;
        }
    }

    /// Closeness centrality `(N − 1)/Σ d(v, u)` of `node` over its connected
    /// component, with unweighted hop distances. Isolated nodes score 0.
    pub fn closeness_centrality(&self, node: &NodeId) -> Result<f64> {
        centrality::closeness(self, node)
    }

    /// Caches closeness on every node, honouring pinned values.
    pub fn update_closeness(&mut self) {
        let computed: Vec<(NodeId, f64)> = self
            .nodes
            .keys()
            .map(|id| {
                (
                    id.clone(),
                    centrality::closeness(self, id).expect("known node"),
                )
            })
            .collect();
        for (id, c) in computed {
            let node = self.nodes.get_mut(&id).expect("known node");
            node.closeness = node.pinned_closeness.unwrap_or(c);
        }
    }
}
