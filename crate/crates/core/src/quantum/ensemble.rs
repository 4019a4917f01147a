use super::metrics::fidelity_uhlmann;
use super::state::DensityMatrix;
use crate::{Error, Result, DERIVED_TOL, INVARIANT_TOL};

#[derive(Debug, Clone, PartialEq)]
pub struct EnsembleItem {
    /// Source-side weight `pᵢ`.
    pub p: f64,
    /// Destination-side weight `qᵢ`.
    pub q: f64,
    pub rho: DensityMatrix,
    pub sigma: DensityMatrix,
}

/// Paired source/destination ensembles `{pᵢ, ρᵢ}` and `{qᵢ, σᵢ}`.
#[derive(Debug, Clone, PartialEq)]
pub struct StateEnsemble {
    items: Vec<EnsembleItem>,
}

impl StateEnsemble {
    pub fn new(items: Vec<EnsembleItem>) -> Result<Self> {
        let Some(first) = items.first() else {
            return Err(Error::InvalidEnsemble("no items".into()));
        };
        let dim = first.rho.dim();
        for (i, it) in items.iter().enumerate() {
            if !(0.0..=1.0).contains(&it.p) || !(0.0..=1.0).contains(&it.q) {
                return Err(Error::InvalidEnsemble(format!(
                    "item {i}: weight outside [0, 1]"
                )));
            }
            if it.rho.dim() != dim || it.sigma.dim() != dim {
                return Err(Error::InvalidEnsemble(format!(
                    "item {i}: dimension mismatch"
                )));
            }
        }
        let sp: f64 = items.iter().map(|it| it.p).sum();
        let sq: f64 = items.iter().map(|it| it.q).sum();
        if (sp - 1.0).abs() > INVARIANT_TOL || (sq - 1.0).abs() > INVARIANT_TOL {
            return Err(Error::InvalidEnsemble(format!(
                "weights sum to {sp} and {sq}"
            )));
        }
        Ok(Self { items })
    }

    pub fn items(&self) -> &[EnsembleItem] {
        &self.items
    }

    pub fn source_mixture(&self) -> Result<DensityMatrix> {
        let w: Vec<f64> = self.items.iter().map(|it| it.p).collect();
        let s: Vec<&DensityMatrix> = self.items.iter().map(|it| &it.rho).collect();
        DensityMatrix::mixture(&w, &s)
    }

    pub fn destination_mixture(&self) -> Result<DensityMatrix> {
        let w: Vec<f64> = self.items.iter().map(|it| it.q).collect();
        let s: Vec<&DensityMatrix> = self.items.iter().map(|it| &it.sigma).collect();
        DensityMatrix::mixture(&w, &s)
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct InequalityCheck {
    pub lhs: f64,
    pub rhs: f64,
    pub holds: bool,
}

/// Strong joint concavity of fidelity:
/// `F(Σpᵢρᵢ, Σqᵢσᵢ) ≥ Σ√(pᵢqᵢ) F(ρᵢ, σᵢ)`.
pub fn ensemble_fidelity_inequality_check(ensemble: &StateEnsemble) -> Result<InequalityCheck> {
    let lhs = fidelity_uhlmann(
        &ensemble.source_mixture()?,
        &ensemble.destination_mixture()?,
    )?;
    let mut rhs = 0.0;
    for it in ensemble.items() {
        rhs += (it.p * it.q).sqrt() * fidelity_uhlmann(&it.rho, &it.sigma)?;
    }
    Ok(InequalityCheck {
        lhs,
        rhs,
        holds: lhs >= rhs - DERIVED_TOL,
    })
}
