//! Trial execution and the capacity sweep.

use rand::seq::index;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Binomial, Distribution};
use rayon::prelude::*;

use super::config::{Algorithm, ExperimentConfig, PairSpec};
use super::metrics::{aggregate, MetricsRecord};
use crate::network::{sample_edge_attributes_with, NetworkGraph, SdPair};
use crate::quantum::make_state;
use crate::routing::{baseline_route, tdpp_route, FailureReason, RoutingOutcome};
use crate::{Error, Result};

/// Graph a trial routed on (resources as initialised) and the outcomes.
#[derive(Debug, Clone)]
pub struct TrialResult {
    pub graph: NetworkGraph,
    pub outcomes: Vec<RoutingOutcome>,
}

/// Generator for one `(capacity, trial)` point. Every algorithm sees the same
/// stream, so they are compared on identical links and requests.
pub fn trial_rng(rng_seed: u64, capacity: u32, trial_index: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(rng_seed);
    rng.set_stream((u64::from(capacity) << 32) | (trial_index & 0xffff_ffff));
    rng
}

/// Success threshold after applying the α, β state weight when enabled.
pub fn effective_threshold(config: &ExperimentConfig) -> Result<f64> {
    if !config.state_factor {
        return Ok(config.fidelity_threshold);
    }
    let state = make_state(config.alpha, config.beta)?;
    let weight = state
        .amplitudes()
        .iter()
        .map(|a| a.norm_sqr())
        .fold(0.0, f64::max);
    Ok(config.fidelity_threshold * weight)
}

/// Samples `count` distinct unordered node pairs.
pub fn sample_pairs<R: Rng + ?Sized>(
    graph: &NetworkGraph,
    count: usize,
    rng: &mut R,
) -> Result<Vec<SdPair>> {
    let ids: Vec<_> = graph.node_ids().cloned().collect();
    let n = ids.len();
    let total = n * n.saturating_sub(1) / 2;
    if count > total {
        return Err(Error::Config(format!(
            "{count} pairs requested but the network has only {total} node pairs"
        )));
    }
    let all: Vec<(usize, usize)> = (0..n)
        .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
        .collect();
    Ok(index::sample(rng, total, count)
        .into_iter()
        .map(|k| {
            let (i, j) = all[k];
            SdPair::new(ids[i].clone(), ids[j].clone())
        })
        .collect())
}

/// Marks successful outcomes failed when they need more sequential slots
/// than fit in one qubit lifetime.
pub fn qubit_lifetime_filter(
    mut outcomes: Vec<RoutingOutcome>,
    slot_ms: u64,
    lifetime_ms: u64,
) -> Vec<RoutingOutcome> {
    let budget = lifetime_ms / slot_ms.max(1);
    for o in outcomes.iter_mut().filter(|o| o.success) {
        if u64::from(o.slots) > budget {
            o.fail(FailureReason::FidelityBelowThreshold);
        }
    }
    outcomes
}

/// Builds the trial network: uniform capacity and memory, sampled fidelities
/// for unset edges, and per-edge usable channels drawn from
/// `Binomial(capacity, link_success_prob)`.
fn prepare<R: Rng + ?Sized>(
    config: &ExperimentConfig,
    base: &NetworkGraph,
    capacity: u32,
    rng: &mut R,
) -> Result<NetworkGraph> {
    let mut graph = base.clone();
    graph.set_uniform_capacity(capacity);
    graph.set_uniform_memory(config.memory_per_node);
    sample_edge_attributes_with(&mut graph, config.mean_fidelity, config.fidelity_std, rng)?;
    if config.link_success_prob < 1.0 {
        let dist = Binomial::new(u64::from(capacity), config.link_success_prob).map_err(|_| {
            Error::InvalidParameter {
                name: "link_success_prob",
                value: config.link_success_prob,
            }
        })?;
        for e in graph.edges_mut() {
            e.capacity_free = dist.sample(rng) as u32;
        }
    }
    Ok(graph)
}

/// Runs one trial of `algorithm` on `base` at the given capacity.
pub fn run_trial(
    config: &ExperimentConfig,
    base: &NetworkGraph,
    algorithm: Algorithm,
    capacity: u32,
    trial_index: u64,
) -> Result<TrialResult> {
    let mut rng = trial_rng(config.rng_seed, capacity, trial_index);
    let graph = prepare(config, base, capacity, &mut rng)?;
    let pairs = match &config.pairs {
        PairSpec::Count(n) => sample_pairs(&graph, *n, &mut rng)?,
        PairSpec::Explicit(p) => p.clone(),
    };
    let threshold = effective_threshold(config)?;
    let mut working = graph.clone();
    let outcomes = match algorithm.baseline_kind() {
        None => tdpp_route(&mut working, &pairs, config.k_paths, threshold)?,
        Some(kind) => baseline_route(&mut working, &pairs, kind)?,
    };
    Ok(TrialResult {
        graph,
        outcomes: qubit_lifetime_filter(outcomes, config.slot_ms, config.lifetime_ms),
    })
}

/// Sweeps every capacity and algorithm, one record per combination, in
/// capacity-major then configured-algorithm order.
pub fn run_experiment(config: &ExperimentConfig) -> Result<Vec<MetricsRecord>> {
    config.validate()?;
    let base = config.topology.load()?;
    let jobs: Vec<(u32, Algorithm, u64)> = config
        .capacity_range
        .iter()
        .flat_map(|&c| {
            config
                .algorithms
                .iter()
                .flat_map(move |&a| (0..config.trials as u64).map(move |t| (c, a, t)))
        })
        .collect();
    let run = || -> Result<Vec<Vec<RoutingOutcome>>> {
        jobs.par_iter()
            .map(|&(c, a, t)| run_trial(config, &base, a, c, t).map(|r| r.outcomes))
            .collect()
    };
    let results = match config.threads {
        Some(n) => rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build()
            .map_err(|e| Error::Config(format!("thread pool: {e}")))?
            .install(run)?,
        None => run()?,
    };
    let pair_count = match &config.pairs {
        PairSpec::Count(n) => *n,
        PairSpec::Explicit(p) => p.len(),
    };
    Ok(results
        .chunks(config.trials)
        .zip(jobs.chunks(config.trials))
        .map(|(trials, job)| aggregate(job[0].0, job[0].1, pair_count, trials))
        .collect())
}
