//! Independent oracles shared by the integration suites.
#![allow(dead_code)]

use std::collections::BTreeMap;

use rand::Rng;
use tdpp::network::{NetworkGraph, NodeId, SdPair};
use tdpp::quantum::{Complex64, DensityMatrix};

/// Bloch vector `(x, y, z)` of a qubit state `½(I + xX + yY + zZ)`.
pub fn bloch(rho: &DensityMatrix) -> [f64; 3] {
    let m = rho.matrix();
    let off: Complex64 = m.get(0, 1);
    [2.0 * off.re, -2.0 * off.im, m.get(0, 0).re - m.get(1, 1).re]
}

fn norm(v: [f64; 3]) -> f64 {
    (v[0] * v[0] + v[1] * v[1] + v[2] * v[2]).sqrt()
}

fn dot(a: [f64; 3], b: [f64; 3]) -> f64 {
    a[0] * b[0] + a[1] * b[1] + a[2] * b[2]
}

/// Qubit trace distance as half the Euclidean Bloch distance.
pub fn trace_distance_bloch(rho: &DensityMatrix, sigma: &DensityMatrix) -> f64 {
    let (r, s) = (bloch(rho), bloch(sigma));
    0.5 * norm([r[0] - s[0], r[1] - s[1], r[2] - s[2]])
}

/// Qubit root fidelity from `F² = tr ρσ + 2√(det ρ · det σ)`.
pub fn fidelity_bloch(rho: &DensityMatrix, sigma: &DensityMatrix) -> f64 {
    let (r, s) = (bloch(rho), bloch(sigma));
    let overlap = 0.5 * (1.0 + dot(r, s));
    // Pure states carry determinant rounding noise near ε, which the square
    // root would lift to ~1e-8.
    let det = |v: [f64; 3]| {
        let d = (1.0 - dot(v, v)) / 4.0;
        if d < 64.0 * f64::EPSILON {
            0.0
        } else {
            d
        }
    };
    (overlap + 2.0 * (det(r) * det(s)).sqrt())
        .clamp(0.0, 1.0)
        .sqrt()
}

/// Success probability of guessing ρ on outcome `P` and σ otherwise, for the
/// rank-one projector onto Bloch direction `n`.
pub fn projector_success(rho: &DensityMatrix, sigma: &DensityMatrix, n: [f64; 3]) -> f64 {
    let (r, s) = (bloch(rho), bloch(sigma));
    // tr(P ρ) = ½(1 + n·r)
    0.5 * (0.5 * (1.0 + dot(n, r)) + 1.0 - 0.5 * (1.0 + dot(n, s)))
}

/// Best projective discrimination over the trivial projectors, a
/// `grid × 2grid` sphere of rank-one projectors, and the sphere point along
/// `r − s` (where the linear objective peaks).
pub fn brute_force_discrimination(
    rho: &DensityMatrix,
    sigma: &DensityMatrix,
    grid: usize,
) -> (f64, f64) {
    let mut best_grid: f64 = 0.5;
    for i in 0..=grid {
        let theta = std::f64::consts::PI * i as f64 / grid as f64;
        for j in 0..2 * grid {
            let phi = std::f64::consts::PI * j as f64 / grid as f64;
            let n = [
                theta.sin() * phi.cos(),
                theta.sin() * phi.sin(),
                theta.cos(),
            ];
            best_grid = best_grid.max(projector_success(rho, sigma, n));
        }
    }
    let (r, s) = (bloch(rho), bloch(sigma));
    let d = [r[0] - s[0], r[1] - s[1], r[2] - s[2]];
    let len = norm(d);
    let best = if len > 0.0 {
        projector_success(rho, sigma, [d[0] / len, d[1] / len, d[2] / len]).max(0.5)
    } else {
        0.5
    };
    (best, best_grid)
}

/// All-pairs hop distances by Floyd–Warshall.
pub fn floyd_hops(graph: &NetworkGraph) -> BTreeMap<(NodeId, NodeId), usize> {
    let ids: Vec<NodeId> = graph.node_ids().cloned().collect();
    let n = ids.len();
    let inf = usize::MAX / 4;
    let mut d = vec![vec![inf; n]; n];
    for i in 0..n {
        d[i][i] = 0;
        for j in 0..n {
            if graph.edge(&ids[i], &ids[j]).is_some() {
                d[i][j] = 1;
            }
        }
    }
    for k in 0..n {
        for i in 0..n {
            for j in 0..n {
                if d[i][k] + d[k][j] < d[i][j] {
                    d[i][j] = d[i][k] + d[k][j];
                }
            }
        }
    }
    let mut out = BTreeMap::new();
    for i in 0..n {
        for j in 0..n {
            if d[i][j] < inf {
                out.insert((ids[i].clone(), ids[j].clone()), d[i][j]);
            }
        }
    }
    out
}

/// Closeness over the node's component from Floyd–Warshall distances.
pub fn closeness_oracle(graph: &NetworkGraph, id: &NodeId) -> f64 {
    let d = floyd_hops(graph);
    let reach: Vec<usize> = graph
        .node_ids()
        .filter(|v| *v != id)
        .filter_map(|v| d.get(&(id.clone(), v.clone())).copied())
        .collect();
    let total: usize = reach.iter().sum();
    if total == 0 {
        0.0
    } else {
        reach.len() as f64 / total as f64
    }
}

/// Every simple path from `pair.source` to `pair.destination`, by DFS.
pub fn all_simple_paths(graph: &NetworkGraph, pair: &SdPair) -> Vec<Vec<NodeId>> {
    fn dfs(
        graph: &NetworkGraph,
        target: &NodeId,
        stack: &mut Vec<NodeId>,
        out: &mut Vec<Vec<NodeId>>,
    ) {
        let last = stack.last().unwrap().clone();
        if &last == target {
            out.push(stack.clone());
            return;
        }
        let next: Vec<NodeId> = graph.neighbors(&last).cloned().collect();
        for v in next {
            if !stack.contains(&v) {
                stack.push(v);
                dfs(graph, target, stack, out);
                stack.pop();
            }
        }
    }
    let mut out = Vec::new();
    if pair.source == pair.destination {
        return out;
    }
    dfs(
        graph,
        &pair.destination,
        &mut vec![pair.source.clone()],
        &mut out,
    );
    out
}

/// Random connected graph on `n` nodes: a random spanning tree plus extra
/// edges, fidelities uniform in `[0.5, 1)`, closeness computed.
pub fn random_instance<R: Rng>(
    rng: &mut R,
    n: usize,
    extra_edge_p: f64,
    capacity: u32,
    memory: u32,
) -> NetworkGraph {
    let mut g = NetworkGraph::new();
    for i in 0..n {
        g.add_node(format!("n{i}"), memory).unwrap();
    }
    let id = |i: usize| NodeId::from(format!("n{i}"));
    for i in 1..n {
        let j = rng.random_range(0..i);
        g.add_edge(id(j), id(i), capacity)
            .unwrap()
            .set_fidelity(rng.random_range(0.5..1.0));
    }
    for i in 0..n {
        for j in i + 1..n {
            if g.edge(&id(i), &id(j)).is_none() && rng.random_bool(extra_edge_p) {
                g.add_edge(id(i), id(j), capacity)
                    .unwrap()
                    .set_fidelity(rng.random_range(0.5..1.0));
            }
        }
    }
    g.update_closeness();
    g
}
