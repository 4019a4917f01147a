use std::f64::consts::PI;

use super::metrics::fidelity_uhlmann;
use super::state::{ComplexMatrix, DensityMatrix, PureState, UnitaryOp};
use crate::{Error, Result};

/// Completely positive trace-preserving qubit map.
#[derive(Debug, Clone, PartialEq)]
pub enum QuantumChannel {
    /// `ρ ↦ (1 − p)ρ + p·I/2`.
    Depolarizing { p: f64 },
    /// Phase damping `ρ ↦ pρ + (1 − p)ZρZ`; `p` is the probability that the
    /// phase survives, so `p = 1` is the identity.
    Dephasing { p: f64 },
    /// Fibre segment modelled as phase damping whose survival probability is
    /// the transmittance `10^(−L·a/10)`.
    Fiber {
        length_km: f64,
        attenuation_db_per_km: f64,
    },
    /// Composition applied right to left: `[a, b, c]` is `a(b(c(ρ)))`.
    Composed(Vec<QuantumChannel>),
}

fn check_probability(name: &'static str, p: f64) -> Result<()> {
    if !(0.0..=1.0).contains(&p) {
        return Err(Error::InvalidParameter { name, value: p });
    }
    Ok(())
}

impl QuantumChannel {
    pub fn depolarizing(p: f64) -> Result<Self> {
        check_probability("p", p)?;
        Ok(Self::Depolarizing { p })
    }

    pub fn dephasing(p: f64) -> Result<Self> {
        check_probability("p", p)?;
        Ok(Self::Dephasing { p })
    }

    pub fn fiber(length_km: f64, attenuation_db_per_km: f64) -> Result<Self> {
        let ch = Self::Fiber {
            length_km,
            attenuation_db_per_km,
        };
        ch.validate()?;
        Ok(ch)
    }

    pub fn composed(channels: Vec<QuantumChannel>) -> Self {
        Self::Composed(channels)
    }

    pub fn identity() -> Self {
        Self::Composed(Vec::new())
    }

    /// The `depol ∘ dephase ∘ fibre` link model.
    pub fn link_model(
        depolarizing_p: f64,
        dephasing_p: f64,
        length_km: f64,
        attenuation_db_per_km: f64,
    ) -> Result<Self> {
        Ok(Self::Composed(vec![
            Self::depolarizing(depolarizing_p)?,
            Self::dephasing(dephasing_p)?,
            Self::fiber(length_km, attenuation_db_per_km)?,
        ]))
    }

    /// Survival probability of the phase over a fibre segment.
    pub fn fiber_transmittance(length_km: f64, attenuation_db_per_km: f64) -> f64 {
        10f64.powf(-length_km * attenuation_db_per_km / 10.0)
    }

    fn validate(&self) -> Result<()> {
        match self {
            Self::Depolarizing { p } | Self::Dephasing { p } => check_probability("p", *p),
            Self::Fiber {
                length_km,
                attenuation_db_per_km,
            } => {
                if length_km.is_nan() || *length_km < 0.0 {
                    return Err(Error::InvalidParameter {
                        name: "length_km",
                        value: *length_km,
                    });
                }
                if attenuation_db_per_km.is_nan() || *attenuation_db_per_km < 0.0 {
                    return Err(Error::InvalidParameter {
                        name: "attenuation_db_per_km",
                        value: *attenuation_db_per_km,
                    });
                }
                Ok(())
            }
            Self::Composed(parts) => parts.iter().try_for_each(Self::validate),
        }
    }

    pub fn apply(&self, rho: &DensityMatrix) -> Result<DensityMatrix> {
        self.validate()?;
        if rho.dim() != 2 {
            return Err(Error::NotQubit(rho.dim()));
        }
        self.apply_unchecked(rho)
    }

    fn apply_unchecked(&self, rho: &DensityMatrix) -> Result<DensityMatrix> {
        match self {
            Self::Depolarizing { p } => {
                let mixed = ComplexMatrix::identity(2).scale(0.5 * p);
                DensityMatrix::from_map_output(&rho.matrix().scale(1.0 - p) + &mixed)
            }
            Self::Dephasing { p } => dephase(rho, *p),
            Self::Fiber {
                length_km,
                attenuation_db_per_km,
            } => dephase(
                rho,
                Self::fiber_transmittance(*length_km, *attenuation_db_per_km),
            ),
            Self::Composed(parts) => parts
                .iter()
                .rev()
                .try_fold(rho.clone(), |acc, ch| ch.apply_unchecked(&acc)),
        }
    }
}

fn dephase(rho: &DensityMatrix, keep: f64) -> Result<DensityMatrix> {
    let z = UnitaryOp::pauli_z();
    let flipped = &(z.matrix() * rho.matrix()) * z.matrix();
    DensityMatrix::from_map_output(&rho.matrix().scale(keep) + &flipped.scale(1.0 - keep))
}

/// `F(ρ, ε(ρ))` in the unsquared convention.
pub fn channel_state_fidelity(rho: &DensityMatrix, channel: &QuantumChannel) -> Result<f64> {
    fidelity_uhlmann(rho, &channel.apply(rho)?)
}

/// Closed-form phase-damping fidelity `√(p + (1 − p)⟨ψ|Z|ψ⟩²)`.
pub fn phase_damping_fidelity(psi: &PureState, p: f64) -> Result<f64> {
    check_probability("p", p)?;
    if psi.dim() != 2 {
        return Err(Error::NotQubit(psi.dim()));
    }
    let z = psi.expectation(UnitaryOp::pauli_z().matrix())?.re;
    Ok((p + (1.0 - p) * z * z).sqrt())
}

/// `F(|ψ⟩, ε(|ψ⟩⟨ψ|)) = √⟨ψ|ε(|ψ⟩⟨ψ|)|ψ⟩`, the pure-input special case of
/// [`channel_state_fidelity`].
pub fn pure_channel_fidelity(psi: &PureState, channel: &QuantumChannel) -> Result<f64> {
    let out = channel.apply(&psi.to_density())?;
    Ok(psi.expectation(out.matrix())?.re.clamp(0.0, 1.0).sqrt())
}

/// Minimum of [`channel_state_fidelity`] over pure input states, searched on
/// a `resolution × resolution` Bloch-sphere grid.
///
/// Polar angles run over `π·i/(n−1)` (both poles included) and azimuths over
/// `2π·j/n`. The first grid point attaining the minimum wins.
pub fn min_channel_fidelity(
    channel: &QuantumChannel,
    resolution: usize,
) -> Result<(f64, PureState)> {
    if resolution < 2 {
        return Err(Error::InvalidParameter {
            name: "grid_resolution",
            value: resolution as f64,
        });
    }
    let n = resolution;
    let mut best: Option<(f64, PureState)> = None;
    for i in 0..n {
        let theta = PI * i as f64 / (n - 1) as f64;
        for j in 0..n {
            let phi = 2.0 * PI * j as f64 / n as f64;
            let psi = PureState::from_bloch_angles(theta, phi);
            let f = pure_channel_fidelity(&psi, channel)?;
            if best.as_ref().is_none_or(|(b, _)| f < *b) {
                best = Some((f, psi));
            }
        }
    }
    Ok(best.expect("grid is non-empty"))
}
