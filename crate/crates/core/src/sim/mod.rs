//! Monte-Carlo experiments over capacity sweeps.

mod config;
mod engine;
mod metrics;

pub use config::{
    parse_capacity_list, parse_pair_list, Algorithm, ExperimentConfig, PairSpec, TopologySource,
    CONFIG_KEYS, DEFAULT_LINK_SUCCESS_PROB,
};
pub use engine::{
    effective_threshold, qubit_lifetime_filter, run_experiment, run_trial, sample_pairs, trial_rng,
    TrialResult,
};
pub use metrics::{
    aggregate, parse_csv, spearman, standard_error, to_csv, MetricsRecord, CSV_HEADER,
};
