//! Seeded random qubit states and unitaries for property checks and
//! simulation.

use std::f64::consts::PI;

use rand::Rng;

use super::state::{DensityMatrix, PureState, UnitaryOp};

/// Random pure qubit, uniform on the Bloch sphere.
pub fn random_pure_qubit<R: Rng + ?Sized>(rng: &mut R) -> PureState {
    let z: f64 = rng.random_range(-1.0..=1.0);
    let phi: f64 = rng.random_range(0.0..2.0 * PI);
    PureState::from_bloch_angles(z.acos(), phi)
}

/// Random qubit density matrix, uniform in the Bloch ball. One draw in five
/// is pure so rank-deficient inputs are exercised.
pub fn random_qubit_state<R: Rng + ?Sized>(rng: &mut R) -> DensityMatrix {
    if rng.random_bool(0.2) {
        return random_pure_qubit(rng).to_density();
    }
    let z: f64 = rng.random_range(-1.0..=1.0);
    let phi: f64 = rng.random_range(0.0..2.0 * PI);
    let r: f64 = rng.random::<f64>().cbrt();
    let s = (1.0 - z * z).max(0.0).sqrt();
    DensityMatrix::from_bloch(r * s * phi.cos(), r * s * phi.sin(), r * z)
        .expect("Bloch vector inside the unit ball")
}

/// Random single-qubit unitary from uniformly drawn Euler angles.
pub fn random_qubit_unitary<R: Rng + ?Sized>(rng: &mut R) -> UnitaryOp {
    UnitaryOp::qubit_euler(
        rng.random_range(0.0..2.0 * PI),
        rng.random_range(0.0..2.0 * PI),
        rng.random_range(0.0..PI),
        rng.random_range(0.0..2.0 * PI),
    )
}
