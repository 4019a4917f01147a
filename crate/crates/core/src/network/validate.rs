//! Post-hoc checks that a batch of routing outcomes respects the network's
//! resource and path-consistency constraints.

use std::collections::BTreeMap;
use std::fmt;

use super::{EdgeKey, NetworkGraph, NodeId};
use crate::numfmt::sig6;
use crate::routing::RoutingOutcome;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Constraint {
    /// A used edge has at least one channel.
    ChannelPresent,
    /// A used node has at least one memory slot and is not overcommitted.
    MemoryAvailable,
    /// The path leaves the source.
    SourceFlow,
    /// The path reaches the destination.
    DestinationFlow,
    /// Consecutive path nodes are joined by an existing edge.
    IntermediateFlow,
    /// Per-edge usage does not exceed capacity.
    CapacityBound,
    /// Purification never lowers a link's fidelity.
    PurificationMonotone,
}

impl Constraint {
    pub fn label(&self) -> &'static str {
        match self {
            Self::ChannelPresent => "13b",
            Self::MemoryAvailable => "13c",
            Self::SourceFlow => "13d",
            Self::DestinationFlow => "13e",
            Self::IntermediateFlow => "13f",
            Self::CapacityBound => "13g",
            Self::PurificationMonotone => "13h",
        }
    }
}

impl fmt::Display for Constraint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Violation {
    pub constraint: Constraint,
    /// Node id, edge key (`u-v`) or pair reference.
    pub entity: String,
    pub detail: String,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "CONSTRAINT {} AT {}: {}",
            self.constraint, self.entity, self.detail
        )
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn is_empty(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn len(&self) -> usize {
        self.violations.len()
    }

    pub fn count(&self, constraint: Constraint) -> usize {
        self.violations
            .iter()
            .filter(|v| v.constraint == constraint)
            .count()
    }

    /// One line per violation, each newline-terminated.
    pub fn render(&self) -> String {
        self.violations.iter().map(|v| format!("{v}\n")).collect()
    }
}

/// Checks successful outcomes against `graph`'s totals. Failed outcomes hold
/// no resources and are only checked for purification monotonicity.
pub fn validate_flow_constraints(
    graph: &NetworkGraph,
    outcomes: &[RoutingOutcome],
) -> ValidationReport {
    let mut violations = Vec::new();
    let mut push = |constraint, entity: String, detail: String| {
        violations.push(Violation {
            constraint,
            entity,
            detail,
        })
    };
    let mut edge_use: BTreeMap<EdgeKey, u64> = BTreeMap::new();
    let mut node_use: BTreeMap<NodeId, u64> = BTreeMap::new();

    for o in outcomes {
        let pair_ref = format!("pair {} ({})", o.pair_index, o.pair);
        if let Some(d) = &o.decision {
            if d.triggered && d.f_purified < d.f_before {
                push(
                    Constraint::PurificationMonotone,
                    d.edge.to_string(),
                    format!(
                        "fidelity fell from {} to {}",
                        sig6(d.f_before),
                        sig6(d.f_purified)
                    ),
                );
            }
        }
        if !o.success {
            continue;
        }
        let Some(path) = &o.path else {
            push(
                Constraint::SourceFlow,
                pair_ref,
                "successful outcome without a path".into(),
            );
            continue;
        };
        if path.nodes.first() != Some(&o.pair.source) {
            push(
                Constraint::SourceFlow,
                pair_ref.clone(),
                format!(
                    "path starts at {} instead of {}",
                    path.nodes.first().map_or("nothing", |n| n.as_str()),
                    o.pair.source
                ),
            );
        }
        if path.nodes.last() != Some(&o.pair.destination) {
            push(
                Constraint::DestinationFlow,
                pair_ref.clone(),
                format!(
                    "path ends at {} instead of {}",
                    path.nodes.last().map_or("nothing", |n| n.as_str()),
                    o.pair.destination
                ),
            );
        }
        for w in path.nodes.windows(2) {
            let key = EdgeKey::between(&w[0], &w[1]);
            if graph.edge_by_key(&key).is_none() {
                push(
                    Constraint::IntermediateFlow,
                    key.to_string(),
                    format!("{pair_ref} hops between non-adjacent nodes"),
                );
            } else {
                *edge_use.entry(key).or_default() += 1;
            }
        }
        for n in &path.nodes {
            *node_use.entry(n.clone()).or_default() += 1;
        }
    }

    for (key, used) in &edge_use {
        let total = graph.edge_by_key(key).map_or(0, |e| e.capacity_total);
        if total < 1 {
            push(
                Constraint::ChannelPresent,
                key.to_string(),
                "edge used but has no channels".into(),
            );
        } else if *used > u64::from(total) {
            push(
                Constraint::CapacityBound,
                key.to_string(),
                format!("used {used} times, capacity {total}"),
            );
        }
    }
    for (node, used) in &node_use {
        let total = graph.node(node).map_or(0, |n| n.memory_total);
        if total < 1 {
            push(
                Constraint::MemoryAvailable,
                node.to_string(),
                "node used but has no memory".into(),
            );
        } else if *used > u64::from(total) {
            push(
                Constraint::MemoryAvailable,
                node.to_string(),
                format!("used {used} times, memory {total}"),
            );
        }
    }
    ValidationReport { violations }
}
