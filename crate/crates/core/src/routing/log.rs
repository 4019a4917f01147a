//! One-line-per-request decision log.
//!
//! ```text
//! pair=0 src=s dst=d status=success reason=none path=s>r2>r3>d e2e=0.638… \
//!   d_max=0.670000 f_sel_edge=0.860000 purified_hop=1 f_before=0.640000 \
//!   f_purified=0.927362 rounds=1 trig_operative=0,1,0 trig_floor=1,0,1 slots=2
//! ```
//!
//! Absent values are written as `-`. `purified_hop` is the 0-based hop index
//! of the purified edge along `path`.

use std::collections::BTreeMap;

use super::{
    EdgeMetric, EdgeTrigger, FailureReason, PathRecord, PurificationDecision, RoutingOutcome,
};
use crate::network::{coupled_trace_distance, NetworkGraph, NodeId, SdPair};
use crate::numfmt::sig6;
use crate::{Error, Result};

fn flags(it: impl Iterator<Item = bool>) -> String {
    let v: Vec<&str> = it.map(|b| if b { "1" } else { "0" }).collect();
    if v.is_empty() {
        "-".into()
    } else {
        v.join(",")
    }
}

fn format_line(o: &RoutingOutcome) -> String {
    let mut fields: Vec<(&str, String)> = vec![
        ("pair", o.pair_index.to_string()),
        ("src", o.pair.source.to_string()),
        ("dst", o.pair.destination.to_string()),
        (
            "status",
            if o.success {
                "success".into()
            } else {
                "failure".into()
            },
        ),
        ("reason", o.failure.map_or("none".into(), |r| r.to_string())),
        (
            "path",
            o.path.as_ref().map_or("-".into(), PathRecord::render),
        ),
        (
            "e2e",
            if o.path.is_some() {
                sig6(o.e2e_fidelity)
            } else {
                "-".into()
            },
        ),
    ];
    match (&o.decision, &o.path) {
        (Some(d), Some(p)) => {
            let hop = p
                .edges()
                .iter()
                .position(|e| e == &d.edge)
                .expect("decision edge on path");
            fields.extend([
                ("d_max", sig6(d.d_max)),
                ("f_sel_edge", sig6(d.f_sel_edge)),
                (
                    "purified_hop",
                    if d.triggered {
                        hop.to_string()
                    } else {
                        "-".into()
                    },
                ),
                ("f_before", sig6(d.f_before)),
                ("f_purified", sig6(d.f_purified)),
                ("rounds", d.rounds.to_string()),
            ]);
        }
        _ => {
            for k in [
                "d_max",
                "f_sel_edge",
                "purified_hop",
                "f_before",
                "f_purified",
                "rounds",
            ] {
                fields.push((k, "-".into()));
            }
        }
    }
    fields.push((
        "trig_operative",
        flags(o.edge_triggers.iter().map(|t| t.operative)),
    ));
    fields.push((
        "trig_floor",
        flags(o.edge_triggers.iter().map(|t| t.fidelity_floor)),
    ));
    fields.push(("slots", o.slots.to_string()));
    fields
        .into_iter()
        .map(|(k, v)| format!("{k}={v}"))
        .collect::<Vec<_>>()
        .join(" ")
}

/// Renders outcomes, one line each, terminated by newlines.
pub fn format_decision_log(outcomes: &[RoutingOutcome]) -> String {
    outcomes.iter().map(|o| format_line(o) + "\n").collect()
}

/// Alias kept for callers that want to name the parsed form explicitly.
pub type LoggedOutcome = RoutingOutcome;

fn perr(line: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        line,
        message: message.into(),
    }
}

fn optional<'a>(fields: &BTreeMap<&str, &'a str>, key: &str) -> Option<&'a str> {
    fields.get(key).copied().filter(|v| *v != "-")
}

fn num<T: std::str::FromStr>(line: usize, key: &str, v: &str) -> Result<T> {
    v.parse()
        .map_err(|_| perr(line, format!("invalid {key} `{v}`")))
}

fn parse_flags(line: usize, key: &str, v: Option<&str>) -> Result<Vec<bool>> {
    match v {
        None => Ok(Vec::new()),
        Some(s) => s
            .split(',')
            .map(|t| match t {
                "1" => Ok(true),
                "0" => Ok(false),
                _ => Err(perr(line, format!("invalid {key} flag `{t}`"))),
            })
            .collect(),
    }
}

/// Parses a decision log against `graph`. Per-hop metrics are looked up from
/// the graph (NaN where the graph has none). Unknown node ids are an error;
/// non-adjacent hops are kept so validation can report them.
pub fn parse_decision_log(text: &str, graph: &NetworkGraph) -> Result<Vec<RoutingOutcome>> {
    let mut out = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let content = raw.trim();
        if content.is_empty() || content.starts_with('#') {
            continue;
        }
        let mut fields = BTreeMap::new();
        for tok in content.split_whitespace() {
            let (k, v) = tok
                .split_once('=')
                .ok_or_else(|| perr(line, format!("expected key=value, got `{tok}`")))?;
            fields.insert(k, v);
        }
        let get = |k: &str| {
            fields
                .get(k)
                .copied()
                .ok_or_else(|| perr(line, format!("missing `{k}`")))
        };
        let known = |id: &str| -> Result<NodeId> {
            let id = NodeId::from(id);
            if graph.contains_node(&id) {
                Ok(id)
            } else {
                Err(Error::UnknownNode(id.to_string()))
            }
        };

        let pair = SdPair {
            source: known(get("src")?)?,
            destination: known(get("dst")?)?,
        };
        let success = match get("status")? {
            "success" => true,
            "failure" => false,
            other => return Err(perr(line, format!("invalid status `{other}`"))),
        };
        let failure = match get("reason")? {
            "none" => None,
            r => Some(
                r.parse::<FailureReason>()
                    .map_err(|e| perr(line, e.to_string()))?,
            ),
        };
        let path = match optional(&fields, "path") {
            None => None,
            Some(p) => {
                let nodes = p.split('>').map(known).collect::<Result<Vec<_>>>()?;
                let edge_metrics = nodes
                    .windows(2)
                    .map(|w| {
                        let m = graph.edge(&w[0], &w[1]).and_then(|e| e.metrics());
                        EdgeMetric {
                            fidelity: m.map_or(f64::NAN, |m| m.0),
                            trace_distance: m.map_or(f64::NAN, |m| m.1),
                        }
                    })
                    .collect();
                Some(PathRecord {
                    nodes,
                    cost: f64::NAN,
                    edge_metrics,
                })
            }
        };
        let decision = match (&path, optional(&fields, "d_max")) {
            (Some(p), Some(d_max)) => {
                let hop = optional(&fields, "purified_hop")
                    .map(|h| num::<usize>(line, "purified_hop", h))
                    .transpose()?;
                let edges = p.edges();
                let edge_idx = hop.unwrap_or(0);
                let edge = edges
                    .get(edge_idx)
                    .cloned()
                    .ok_or_else(|| perr(line, format!("purified_hop {edge_idx} beyond path")))?;
                let f_purified: f64 = num(line, "f_purified", get("f_purified")?)?;
                Some(PurificationDecision {
                    edge,
                    triggered: hop.is_some(),
                    d_max: num(line, "d_max", d_max)?,
                    f_sel_edge: num(line, "f_sel_edge", get("f_sel_edge")?)?,
                    f_before: num(line, "f_before", get("f_before")?)?,
                    f_purified,
                    d_purified: coupled_trace_distance(f_purified),
                    rounds: num(line, "rounds", get("rounds")?)?,
                })
            }
            _ => None,
        };
        let alg1 = parse_flags(line, "trig_operative", optional(&fields, "trig_operative"))?;
        let fidelity_floor = parse_flags(line, "trig_floor", optional(&fields, "trig_floor"))?;
        let edge_triggers = alg1
            .into_iter()
            .zip(fidelity_floor)
            .map(|(operative, fidelity_floor)| EdgeTrigger {
                operative,
                fidelity_floor,
            })
            .collect();
        out.push(RoutingOutcome {
            pair_index: num(line, "pair", get("pair")?)?,
            pair,
            path,
            decision,
            edge_triggers,
            e2e_fidelity: optional(&fields, "e2e").map_or(Ok(0.0), |v| num(line, "e2e", v))?,
            success,
            failure,
            slots: optional(&fields, "slots").map_or(Ok(0), |v| num(line, "slots", v))?,
        });
    }
    Ok(out)
}
