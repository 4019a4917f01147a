use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Normal};

use super::NetworkGraph;
use crate::{Error, Result};

/// Memory assigned to generated nodes (qubits).
pub const DEFAULT_MEMORY: u32 = 20;
/// Capacity assigned to generated edges (EPR pairs).
pub const DEFAULT_CAPACITY: u32 = 10;

const MIN_FIDELITY: f64 = 0.01;
const MAX_CONNECT_ATTEMPTS: usize = 1000;

/// Draws a fidelity from `Normal(mean, std)` for every edge that has none,
/// clamped to `[0.01, 1]`, and sets the coupled trace distance. Edges with
/// preset values or attached states are left alone. Topology is unchanged.
pub fn sample_edge_attributes(
    graph: &NetworkGraph,
    mean_fidelity: f64,
    std_dev: f64,
    rng_seed: u64,
) -> Result<NetworkGraph> {
    let mut out = graph.clone();
    let mut rng = ChaCha8Rng::seed_from_u64(rng_seed);
    sample_edge_attributes_with(&mut out, mean_fidelity, std_dev, &mut rng)?;
    Ok(out)
}

/// In-place variant of [`sample_edge_attributes`] drawing from `rng`.
/// Edges are visited in key order.
pub fn sample_edge_attributes_with<R: Rng + ?Sized>(
    graph: &mut NetworkGraph,
    mean_fidelity: f64,
    std_dev: f64,
    rng: &mut R,
) -> Result<()> {
    if !(mean_fidelity > 0.0 && mean_fidelity <= 1.0) {
        return Err(Error::InvalidParameter {
            name: "mean_fidelity",
            value: mean_fidelity,
        });
    }
    let normal = Normal::new(mean_fidelity, std_dev).map_err(|_| Error::InvalidParameter {
        name: "std_dev",
        value: std_dev,
    })?;
    for edge in graph.edges_mut() {
        if edge.fidelity.is_some() {
            continue;
        }
        let f = if std_dev == 0.0 {
            mean_fidelity
        } else {
            normal.sample(rng).clamp(MIN_FIDELITY, 1.0)
        };
        edge.set_fidelity(f);
    }
    Ok(())
}

/// Connected Erdős–Rényi graph on nodes `v0..v{n-1}` (zero-padded), resampled
/// until connected. Nodes get [`DEFAULT_MEMORY`], edges [`DEFAULT_CAPACITY`].
pub fn generate_random_graph(
    n_nodes: usize,
    edge_probability: f64,
    rng_seed: u64,
) -> Result<NetworkGraph> {
    if n_nodes < 2 {
        return Err(Error::InvalidParameter {
            name: "n_nodes",
            value: n_nodes as f64,
        });
    }
    if !(edge_probability > 0.0 && edge_probability <= 1.0) {
        return Err(Error::InvalidParameter {
            name: "edge_probability",
            value: edge_probability,
        });
    }
    let width = (n_nodes - 1).to_string().len();
    let ids: Vec<String> = (0..n_nodes).map(|i| format!("v{i:0width$}")).collect();
    let mut rng = ChaCha8Rng::seed_from_u64(rng_seed);
    for _ in 0..MAX_CONNECT_ATTEMPTS {
        let mut g = NetworkGraph::new();
        for id in &ids {
            g.add_node(id.as_str(), DEFAULT_MEMORY)?;
        }
        for i in 0..n_nodes {
            for j in i + 1..n_nodes {
                if rng.random_bool(edge_probability) {
                    g.add_edge(ids[i].as_str(), ids[j].as_str(), DEFAULT_CAPACITY)?;
                }
            }
        }
        if g.is_connected() {
            return Ok(g);
        }
    }
    Err(Error::Graph(format!(
        "no connected graph with n={n_nodes}, p={edge_probability} after {MAX_CONNECT_ATTEMPTS} attempts"
    )))
}
