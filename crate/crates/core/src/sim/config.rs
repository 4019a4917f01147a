//! Experiment configuration and its flat `key = value` document form.

use std::fmt;
use std::path::PathBuf;
use std::str::FromStr;

use crate::network::{load_topology, NetworkGraph, SdPair};
use crate::routing::BaselineKind;
use crate::{Error, Result, FIG3_TOPOLOGY, US_BACKBONE_TOPOLOGY};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Algorithm {
    Tdpp,
    HopBaseline,
    GreedyBaseline,
}

impl Algorithm {
    pub const ALL: [Algorithm; 3] = [Self::Tdpp, Self::HopBaseline, Self::GreedyBaseline];

    pub fn as_str(self) -> &'static str {
        match self {
            Self::Tdpp => "tdpp",
            Self::HopBaseline => "hop_baseline",
            Self::GreedyBaseline => "greedy_baseline",
        }
    }

    pub fn baseline_kind(self) -> Option<BaselineKind> {
        match self {
            Self::Tdpp => None,
            Self::HopBaseline => Some(BaselineKind::HopShortestNoPurification),
            Self::GreedyBaseline => Some(BaselineKind::GreedyMaxFidelity),
        }
    }
}

impl fmt::Display for Algorithm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Algorithm {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Self::ALL
            .into_iter()
            .find(|a| a.as_str() == s)
            .ok_or_else(|| Error::Config(format!("unknown algorithm `{s}`")))
    }
}

/// Where the experiment's network comes from.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum TopologySource {
    UsBackbone,
    Fig3,
    File(PathBuf),
}

impl TopologySource {
    pub fn load(&self) -> Result<NetworkGraph> {
        match self {
            Self::UsBackbone => load_topology(US_BACKBONE_TOPOLOGY),
            Self::Fig3 => load_topology(FIG3_TOPOLOGY),
            Self::File(path) => {
                let text = std::fs::read_to_string(path).map_err(|e| {
                    Error::Config(format!("cannot read topology {}: {e}", path.display()))
                })?;
                load_topology(&text)
            }
        }
    }
}

impl fmt::Display for TopologySource {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::UsBackbone => f.write_str("us_backbone"),
            Self::Fig3 => f.write_str("fig3"),
            Self::File(p) => write!(f, "{}", p.display()),
        }
    }
}

impl FromStr for TopologySource {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "us_backbone" => Self::UsBackbone,
            "fig3" => Self::Fig3,
            "" => return Err(Error::Config("empty topology".into())),
            path => Self::File(PathBuf::from(path)),
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PairSpec {
    /// Sample this many distinct node pairs per trial.
    Count(usize),
    Explicit(Vec<SdPair>),
}

#[derive(Debug, Clone, PartialEq)]
pub struct ExperimentConfig {
    pub topology: TopologySource,
    pub pairs: PairSpec,
    pub algorithms: Vec<Algorithm>,
    pub trials: usize,
    pub rng_seed: u64,
    pub alpha: f64,
    pub beta: f64,
    pub capacity_range: Vec<u32>,
    pub memory_per_node: u32,
    pub mean_fidelity: f64,
    pub fidelity_std: f64,
    pub fidelity_threshold: f64,
    pub k_paths: usize,
    pub slot_ms: u64,
    pub lifetime_ms: u64,
    /// Probability that each of an edge's channels yields a usable pair in a slot.
    pub link_success_prob: f64,
    /// Scale the threshold by the dominant basis weight of the α, β state.
    pub state_factor: bool,
    /// Worker threads; `None` uses every available processor.
    pub threads: Option<usize>,
}

impl Default for ExperimentConfig {
    fn default() -> Self {
        Self {
            topology: TopologySource::UsBackbone,
            pairs: PairSpec::Count(10),
            algorithms: vec![Algorithm::Tdpp, Algorithm::HopBaseline],
            trials: 1000,
            rng_seed: 1,
            alpha: 0.5,
            beta: 0.5,
            capacity_range: (10..=90).step_by(10).collect(),
            memory_per_node: 20,
            mean_fidelity: 0.8,
            fidelity_std: 0.1,
            fidelity_threshold: 0.8,
            k_paths: 2,
            slot_ms: 500,
            lifetime_ms: 1460,
            link_success_prob: DEFAULT_LINK_SUCCESS_PROB,
            state_factor: true,
            threads: None,
        }
    }
}

pub const DEFAULT_LINK_SUCCESS_PROB: f64 = 0.1;

/// Every key accepted by [`ExperimentConfig::set`].
pub const CONFIG_KEYS: [&str; 18] = [
    "topology",
    "pairs",
    "algorithm",
    "trials",
    "rng_seed",
    "alpha",
    "beta",
    "capacity_range",
    "memory_per_node",
    "mean_fidelity",
    "fidelity_std",
    "fidelity_threshold",
    "k_paths",
    "slot_ms",
    "lifetime_ms",
    "link_success_prob",
    "state_factor",
    "threads",
];

fn parse_num<T: FromStr>(key: &str, value: &str) -> Result<T> {
    value
        .parse()
        .map_err(|_| Error::Config(format!("invalid value `{value}` for `{key}`")))
}

/// Parses `10,20,30` or `10..90 step 10` (inclusive; step defaults to 1).
pub fn parse_capacity_list(s: &str) -> Result<Vec<u32>> {
    let s = s.trim();
    let bad = || Error::Config(format!("invalid capacity list `{s}`"));
    if let Some((lo, rest)) = s.split_once("..") {
        let (hi, step) = match rest.split_once("step") {
            Some((hi, step)) => (hi, step.trim().parse::<u32>().map_err(|_| bad())?),
            None => (rest, 1),
        };
        let lo: u32 = lo.trim().parse().map_err(|_| bad())?;
        let hi: u32 = hi.trim().parse().map_err(|_| bad())?;
        if step == 0 || hi < lo {
            return Err(bad());
        }
        return Ok((lo..=hi).step_by(step as usize).collect());
    }
    s.split(',')
        .map(|t| t.trim().parse::<u32>().map_err(|_| bad()))
        .collect::<Result<Vec<_>>>()
        .and_then(|v| if v.is_empty() { Err(bad()) } else { Ok(v) })
}

/// Parses `s:d` items separated by commas.
pub fn parse_pair_list(s: &str) -> Result<Vec<SdPair>> {
    s.split(',')
        .map(|item| {
            let item = item.trim();
            let (src, dst) = item
                .split_once(':')
                .filter(|(a, b)| !a.is_empty() && !b.is_empty())
                .ok_or_else(|| Error::Config(format!("invalid pair `{item}`, expected src:dst")))?;
            Ok(SdPair::new(src, dst))
        })
        .collect()
}

impl ExperimentConfig {
    /// Parses a config document over the defaults. Lines are `key = value`;
    /// blank lines and `#` comments are ignored.
    pub fn from_document(text: &str) -> Result<Self> {
        let mut cfg = Self::default();
        for (idx, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (key, value) = line.split_once('=').ok_or_else(|| Error::Parse {
                line: idx + 1,
                message: format!("expected `key = value`, got `{line}`"),
            })?;
            cfg.set(key.trim(), value.trim())?;
        }
        Ok(cfg)
    }

    /// Sets one key from its text form.
    pub fn set(&mut self, key: &str, value: &str) -> Result<()> {
        match key {
            "topology" => self.topology = value.parse()?,
            "pairs" => {
                self.pairs = match value.parse::<usize>() {
                    Ok(n) => PairSpec::Count(n),
                    Err(_) => PairSpec::Explicit(parse_pair_list(value)?),
                }
            }
            "algorithm" => {
                self.algorithms = value
                    .split(',')
                    .map(|a| a.trim().parse())
                    .collect::<Result<Vec<_>>>()?
            }
            "trials" => self.trials = parse_num(key, value)?,
            "rng_seed" => self.rng_seed = parse_num(key, value)?,
            "alpha" => self.alpha = parse_num(key, value)?,
            "beta" => self.beta = parse_num(key, value)?,
            "capacity_range" => self.capacity_range = parse_capacity_list(value)?,
            "memory_per_node" => self.memory_per_node = parse_num(key, value)?,
            "mean_fidelity" => self.mean_fidelity = parse_num(key, value)?,
            "fidelity_std" => self.fidelity_std = parse_num(key, value)?,
            "fidelity_threshold" => self.fidelity_threshold = parse_num(key, value)?,
            "k_paths" => self.k_paths = parse_num(key, value)?,
            "slot_ms" => self.slot_ms = parse_num(key, value)?,
            "lifetime_ms" => self.lifetime_ms = parse_num(key, value)?,
            "link_success_prob" => self.link_success_prob = parse_num(key, value)?,
            "state_factor" => self.state_factor = parse_num(key, value)?,
            "threads" => self.threads = Some(parse_num(key, value)?),
            _ => return Err(Error::Config(format!("unknown config key `{key}`"))),
        }
        Ok(())
    }

    pub fn validate(&self) -> Result<()> {
        let invalid = |name: &'static str, value: f64| Err(Error::InvalidParameter { name, value });
        if self.trials == 0 {
            return invalid("trials", 0.0);
        }
        if self.capacity_range.is_empty() {
            return Err(Error::Config("capacity_range is empty".into()));
        }
        if let Some(&c) = self.capacity_range.iter().find(|&&c| c < 1) {
            return invalid("capacity_range", c.into());
        }
        if self.algorithms.is_empty() {
            return Err(Error::Config("no algorithm selected".into()));
        }
        if self.alpha == 0.0 && self.beta == 0.0
            || !self.alpha.is_finite()
            || !self.beta.is_finite()
        {
            return Err(Error::Config(
                "alpha and beta must be finite and not both zero".into(),
            ));
        }
        if !(self.fidelity_threshold > 0.0 && self.fidelity_threshold <= 1.0) {
            return invalid("fidelity_threshold", self.fidelity_threshold);
        }
        if !(0.0..=1.0).contains(&self.mean_fidelity) {
            return invalid("mean_fidelity", self.mean_fidelity);
        }
        if !(self.fidelity_std >= 0.0 && self.fidelity_std.is_finite()) {
            return invalid("fidelity_std", self.fidelity_std);
        }
        if !(0.0..=1.0).contains(&self.link_success_prob) {
            return invalid("link_success_prob", self.link_success_prob);
        }
        if self.k_paths == 0 {
            return invalid("k_paths", 0.0);
        }
        if self.slot_ms == 0 {
            return invalid("slot_ms", 0.0);
        }
        if self.lifetime_ms == 0 {
            return invalid("lifetime_ms", 0.0);
        }
        if self.threads == Some(0) {
            return invalid("threads", 0.0);
        }
        if let PairSpec::Explicit(p) = &self.pairs {
            if p.is_empty() {
                return Err(Error::Config("explicit pair list is empty".into()));
            }
        }
        Ok(())
    }
}
