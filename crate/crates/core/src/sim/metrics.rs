//! Aggregated per-capacity metrics, their CSV form and rank statistics.

use super::config::Algorithm;
use crate::numfmt::sig6;
use crate::routing::RoutingOutcome;
use crate::{Error, Result};

pub const CSV_HEADER: &str = "capacity,algorithm,mean_fidelity,stderr_fidelity,mean_throughput,stderr_throughput,success_rate,trials";

#[derive(Debug, Clone, PartialEq)]
pub struct MetricsRecord {
    pub capacity: u32,
    pub algorithm: Algorithm,
    /// Mean end-to-end fidelity over successful outcomes (0 when none).
    pub mean_e2e_fidelity: f64,
    pub stderr_fidelity: f64,
    /// Successful pairs per trial, one trial being one slot.
    pub mean_throughput: f64,
    pub stderr_throughput: f64,
    pub success_rate: f64,
    pub trials: usize,
}

fn mean(xs: &[f64]) -> f64 {
    if xs.is_empty() {
        0.0
    } else {
        xs.iter().sum::<f64>() / xs.len() as f64
    }
}

/// Sample standard deviation over √n; zero for fewer than two values.
pub fn standard_error(xs: &[f64]) -> f64 {
    let n = xs.len();
    if n < 2 {
        return 0.0;
    }
    let m = mean(xs);
    let var = xs.iter().map(|x| (x - m) * (x - m)).sum::<f64>() / (n - 1) as f64;
    (var / n as f64).sqrt()
}

/// Folds per-trial outcomes into one record. The fidelity error is taken over
/// per-trial mean fidelities of trials with at least one success.
pub fn aggregate(
    capacity: u32,
    algorithm: Algorithm,
    pairs_per_trial: usize,
    trials: &[Vec<RoutingOutcome>],
) -> MetricsRecord {
    let throughput: Vec<f64> = trials
        .iter()
        .map(|t| t.iter().filter(|o| o.success).count() as f64)
        .collect();
    let pooled: Vec<f64> = trials
        .iter()
        .flat_map(|t| t.iter().filter(|o| o.success).map(|o| o.e2e_fidelity))
        .collect();
    let per_trial: Vec<f64> = trials
        .iter()
        .filter_map(|t| {
            let f: Vec<f64> = t
                .iter()
                .filter(|o| o.success)
                .map(|o| o.e2e_fidelity)
                .collect();
            (!f.is_empty()).then(|| mean(&f))
        })
        .collect();
    let requested = (trials.len() * pairs_per_trial) as f64;
    MetricsRecord {
        capacity,
        algorithm,
        mean_e2e_fidelity: mean(&pooled),
        stderr_fidelity: standard_error(&per_trial),
        mean_throughput: mean(&throughput),
        stderr_throughput: standard_error(&throughput),
        success_rate: if requested > 0.0 {
            pooled.len() as f64 / requested
        } else {
            0.0
        },
        trials: trials.len(),
    }
}

/// Header plus one row per record, six significant digits.
pub fn to_csv(records: &[MetricsRecord]) -> String {
    let mut out = String::from(CSV_HEADER);
    out.push('\n');
    for r in records {
        out.push_str(&format!(
            "{},{},{},{},{},{},{},{}\n",
            r.capacity,
            r.algorithm,
            sig6(r.mean_e2e_fidelity),
            sig6(r.stderr_fidelity),
            sig6(r.mean_throughput),
            sig6(r.stderr_throughput),
            sig6(r.success_rate),
            r.trials
        ));
    }
    out
}

pub fn parse_csv(text: &str) -> Result<Vec<MetricsRecord>> {
    let mut lines = text.lines().enumerate();
    match lines.next() {
        Some((_, h)) if h.trim() == CSV_HEADER => {}
        _ => {
            return Err(Error::Parse {
                line: 1,
                message: "missing metrics header".into(),
            })
        }
    }
    lines
        .filter(|(_, l)| !l.trim().is_empty())
        .map(|(i, l)| {
            let perr = |m: String| Error::Parse {
                line: i + 1,
                message: m,
            };
            let f: Vec<&str> = l.trim().split(',').collect();
            if f.len() != 8 {
                return Err(perr(format!("expected 8 fields, got {}", f.len())));
            }
            let num = |s: &str| {
                s.parse::<f64>()
                    .map_err(|_| perr(format!("invalid number `{s}`")))
            };
            Ok(MetricsRecord {
                capacity: f[0]
                    .parse()
                    .map_err(|_| perr(format!("invalid capacity `{}`", f[0])))?,
                algorithm: f[1].parse()?,
                mean_e2e_fidelity: num(f[2])?,
                stderr_fidelity: num(f[3])?,
                mean_throughput: num(f[4])?,
                stderr_throughput: num(f[5])?,
                success_rate: num(f[6])?,
                trials: f[7]
                    .parse()
                    .map_err(|_| perr(format!("invalid trials `{}`", f[7])))?,
            })
        })
        .collect()
}

fn average_ranks(xs: &[f64]) -> Vec<f64> {
    let mut idx: Vec<usize> = (0..xs.len()).collect();
    idx.sort_by(|&a, &b| xs[a].total_cmp(&xs[b]));
    let mut ranks = vec![0.0; xs.len()];
    let mut i = 0;
    while i < idx.len() {
        let mut j = i;
        while j + 1 < idx.len() && xs[idx[j + 1]] == xs[idx[i]] {
            j += 1;
        }
        let r = (i + j) as f64 / 2.0 + 1.0;
        for &k in &idx[i..=j] {
            ranks[k] = r;
        }
        i = j + 1;
    }
    ranks
}

/// Spearman rank correlation with average ranks for ties. `None` when either
/// side is constant or the lengths differ.
pub fn spearman(xs: &[f64], ys: &[f64]) -> Option<f64> {
    if xs.len() != ys.len() || xs.len() < 2 {
        return None;
    }
    let (rx, ry) = (average_ranks(xs), average_ranks(ys));
    let (mx, my) = (mean(&rx), mean(&ry));
    let cov: f64 = rx.iter().zip(&ry).map(|(a, b)| (a - mx) * (b - my)).sum();
    let vx: f64 = rx.iter().map(|a| (a - mx) * (a - mx)).sum();
    let vy: f64 = ry.iter().map(|b| (b - my) * (b - my)).sum();
    (vx > 0.0 && vy > 0.0).then(|| cov / (vx * vy).sqrt())
}
