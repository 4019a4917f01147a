use super::state::DensityMatrix;
use crate::{Error, Result, DERIVED_TOL};

fn check_dims(rho: &DensityMatrix, sigma: &DensityMatrix) -> Result<()> {
    if rho.dim() != sigma.dim() {
        return Err(Error::DimensionMismatch(rho.dim(), sigma.dim()));
    }
    Ok(())
}

/// Clamps a metric into `[0, 1]`, refusing excess beyond rounding noise.
fn clamp_unit(x: f64) -> Result<f64> {
    if x > 1.0 + DERIVED_TOL {
        return Err(Error::NumericalExcess(x - 1.0));
    }
    if x < -DERIVED_TOL {
        return Err(Error::NumericalExcess(x));
    }
    Ok(x.clamp(0.0, 1.0))
}

/// Trace distance `½ tr|ρ − σ|`.
pub fn trace_distance(rho: &DensityMatrix, sigma: &DensityMatrix) -> Result<f64> {
    check_dims(rho, sigma)?;
    let diff = rho.matrix() - sigma.matrix();
    let d = 0.5
        * diff
            .hermitian_eigenvalues()
            .iter()
            .map(|l| l.abs())
            .sum::<f64>();
    clamp_unit(d)
}

/// Uhlmann fidelity `tr √(√ρ σ √ρ)` (unsquared convention).
///
/// Evaluated as the trace norm `‖√ρ √σ‖₁`, i.e. the sum of singular values,
/// which equals the eigenvalue form but does not take square roots of
/// rounding noise.
pub fn fidelity_uhlmann(rho: &DensityMatrix, sigma: &DensityMatrix) -> Result<f64> {
    check_dims(rho, sigma)?;
    let prod = &rho.matrix().psd_sqrt()? * &sigma.matrix().psd_sqrt()?;
    clamp_unit(prod.singular_values().iter().sum())
}

/// `tr(√ρ √σ)`. Coincides with [`fidelity_uhlmann`] for commuting inputs and
/// lower-bounds it in general.
pub fn fidelity_product_form(rho: &DensityMatrix, sigma: &DensityMatrix) -> Result<f64> {
    check_dims(rho, sigma)?;
    let prod = &rho.matrix().psd_sqrt()? * &sigma.matrix().psd_sqrt()?;
    clamp_unit(prod.trace().re)
}

/// Optimal probability of telling `ρ` and `σ` apart with one measurement
/// when each is sent with probability ½: `½(1 + D(ρ, σ))`.
pub fn helstrom_success_probability(rho: &DensityMatrix, sigma: &DensityMatrix) -> Result<f64> {
    Ok(0.5 * (1.0 + trace_distance(rho, sigma)?))
}
