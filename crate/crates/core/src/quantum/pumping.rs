use crate::{Error, Result};

fn check_unit(name: &'static str, x: f64) -> Result<()> {
    if !(0.0..=1.0).contains(&x) {
        return Err(Error::InvalidParameter { name, value: x });
    }
    Ok(())
}

/// One entanglement-pumping round combining a working pair of fidelity
/// `f_current` with a base pair of fidelity `f_base`.
///
/// Scalar model `(√f_current + √f_base)/2`: the mean of the square-root
/// overlaps that `tr(√ρ√σ)` reduces to for commuting pair states.
pub fn pump_fidelity(f_current: f64, f_base: f64) -> Result<f64> {
    check_unit("f_current", f_current)?;
    check_unit("f_base", f_base)?;
    Ok(((f_current.sqrt() + f_base.sqrt()) / 2.0).min(1.0))
}

#[derive(Debug, Clone, PartialEq)]
pub struct PumpOutcome {
    pub final_fidelity: f64,
    pub rounds: usize,
    pub trajectory: Vec<f64>,
    pub converged: bool,
}

/// Pumps until the fidelity reaches `threshold` or `max_rounds` is spent.
///
/// Round one combines the two initial pairs; every later round combines the
/// current result with the base pair `f_initial_b`.
pub fn pump_until_threshold(
    f_initial_a: f64,
    f_initial_b: f64,
    threshold: f64,
    max_rounds: usize,
) -> Result<PumpOutcome> {
    check_unit("f_initial_a", f_initial_a)?;
    check_unit("f_initial_b", f_initial_b)?;
    if !(threshold > 0.0 && threshold <= 1.0) {
        return Err(Error::InvalidParameter {
            name: "threshold",
            value: threshold,
        });
    }
    if max_rounds == 0 {
        return Err(Error::InvalidParameter {
            name: "max_rounds",
            value: 0.0,
        });
    }
    let mut trajectory = Vec::new();
    let mut current = f_initial_a;
    let mut converged = false;
    while trajectory.len() < max_rounds {
        current = pump_fidelity(current, f_initial_b)?;
        trajectory.push(current);
        if current >= threshold {
            converged = true;
            break;
        }
    }
    Ok(PumpOutcome {
        final_fidelity: current,
        rounds: trajectory.len(),
        trajectory,
        converged,
    })
}
