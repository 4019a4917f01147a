//! Density-matrix arithmetic, distinguishability metrics, qubit noise
//! channels and entanglement pumping.
//!
//! Everything here operates on small dense matrices (qubits and qubit
//! pairs). All values are immutable once constructed and every operation is
//! a pure function.

mod channel;
mod ensemble;
mod metrics;
mod pumping;
pub mod sample;
mod state;

pub use channel::{
    channel_state_fidelity, min_channel_fidelity, phase_damping_fidelity, pure_channel_fidelity,
    QuantumChannel,
};
pub use ensemble::{
    ensemble_fidelity_inequality_check, EnsembleItem, InequalityCheck, StateEnsemble,
};
pub use metrics::{
    fidelity_product_form, fidelity_uhlmann, helstrom_success_probability, trace_distance,
};
pub use pumping::{pump_fidelity, pump_until_threshold, PumpOutcome};
pub use state::{make_state, ComplexMatrix, DensityMatrix, PureState, UnitaryOp};

pub use num_complex::Complex64;
