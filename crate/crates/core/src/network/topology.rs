//! Line-oriented topology documents.
//!
//! ```text
//! # comment
//! node <id> <memory_total> [closeness]
//! edge <id_u> <id_v> <capacity> [fidelity] [trace_distance]
//! ```
//!
//! Nodes must be declared before the edges that use them. An edge with a
//! fidelity but no trace distance gets the coupled value `2(1 − F)`; an edge
//! with neither is left unset for later sampling.

use std::fmt::Write;
use std::str::FromStr;

use super::{coupled_trace_distance, EdgeKey, NetworkGraph};
use crate::{Error, Result};

fn parse_err(line: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        line,
        message: message.into(),
    }
}

fn number<T: FromStr>(line: usize, what: &str, token: &str) -> Result<T> {
    token
        .parse()
        .map_err(|_| parse_err(line, format!("invalid {what} `{token}`")))
}

fn unit_interval(line: usize, what: &str, token: &str) -> Result<f64> {
    let x: f64 = number(line, what, token)?;
    if !(0.0..=1.0).contains(&x) {
        return Err(parse_err(line, format!("{what} {x} outside [0, 1]")));
    }
    Ok(x)
}

pub fn load_topology(document: &str) -> Result<NetworkGraph> {
    let mut graph = NetworkGraph::new();
    for (idx, raw) in document.lines().enumerate() {
        let line = idx + 1;
        let content = raw.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        let tokens: Vec<&str> = content.split_whitespace().collect();
        match tokens[0] {
            "node" => {
                if !(3..=4).contains(&tokens.len()) {
                    return Err(parse_err(
                        line,
                        "expected `node <id> <memory_total> [closeness]`",
                    ));
                }
                let memory: u32 = number(line, "memory", tokens[2])?;
                let pinned = match tokens.get(3) {
                    Some(t) => {
                        let c: f64 = number(line, "closeness", t)?;
                        if !(c.is_finite() && c >= 0.0) {
                            return Err(parse_err(
                                line,
                                format!("closeness {c} must be non-negative"),
                            ));
                        }
                        Some(c)
                    }
                    None => None,
                };
                let node = graph
                    .add_node(tokens[1], memory)
                    .map_err(|e| parse_err(line, e.to_string()))?;
                node.pinned_closeness = pinned;
            }
            "edge" => {
                if !(4..=6).contains(&tokens.len()) {
                    return Err(parse_err(
                        line,
                        "expected `edge <id_u> <id_v> <capacity> [fidelity] [trace_distance]`",
                    ));
                }
                let (u, v) = (tokens[1], tokens[2]);
                if u == v {
                    return Err(parse_err(line, format!("self-loop on `{u}`")));
                }
                let capacity: u32 = number(line, "capacity", tokens[3])?;
                let fidelity = tokens
                    .get(4)
                    .map(|t| unit_interval(line, "fidelity", t))
                    .transpose()?;
                let distance = tokens
                    .get(5)
                    .map(|t| unit_interval(line, "trace distance", t))
                    .transpose()?;
                let edge = graph
                    .add_edge(u, v, capacity)
                    .map_err(|e| parse_err(line, e.to_string()))?;
                if let Some(f) = fidelity {
                    edge.fidelity = Some(f);
                    edge.trace_distance =
                        Some(distance.unwrap_or_else(|| coupled_trace_distance(f)));
                }
            }
            other => return Err(parse_err(line, format!("unknown record `{other}`"))),
        }
    }
    Ok(graph)
}

/// Renders a graph in the document format. Attached density matrices are
/// not serialised; their scalar metrics are.
pub fn to_topology_document(graph: &NetworkGraph) -> String {
    let mut out = String::new();
    for n in graph.nodes() {
        match n.pinned_closeness {
            Some(c) => writeln!(out, "node {} {} {}", n.id, n.memory_total, c),
            None => writeln!(out, "node {} {}", n.id, n.memory_total),
        }
        .expect("write to String");
    }
    for e in graph.edges() {
        let EdgeKey(u, v) = &e.key;
        match (e.fidelity, e.trace_distance) {
            (Some(f), Some(d)) => writeln!(out, "edge {u} {v} {} {f} {d}", e.capacity_total),
            (Some(f), None) => writeln!(out, "edge {u} {v} {} {f}", e.capacity_total),
            _ => writeln!(out, "edge {u} {v} {}", e.capacity_total),
        }
        .expect("write to String");
    }
    out
}
