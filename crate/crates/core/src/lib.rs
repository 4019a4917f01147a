//! Entanglement routing for quantum repeater networks.
//!
//! The crate is organised in four layers:
//!
//! - [`quantum`]: small dense density-matrix arithmetic, trace distance and
//!   fidelity, qubit noise channels and entanglement pumping.
//! - [`network`]: the undirected network graph, closeness centrality,
//!   topology documents and flow-constraint validation.
//! - [`routing`]: Dijkstra and Yen path search, the trace-distance based
//!   path purification router and two simple baselines.
//! - [`sim`]: a slot-clocked Monte-Carlo experiment engine that sweeps
//!   channel capacity and aggregates throughput and fidelity.

pub mod error;
pub mod network;
pub mod numfmt;
pub mod quantum;
pub mod routing;
pub mod sim;

pub use error::{Error, Result};

/// Tolerance for structural invariants (Hermiticity, trace, positivity, norms).
pub const INVARIANT_TOL: f64 = 1e-10;

/// Tolerance for comparisons between independently derived quantities.
pub const DERIVED_TOL: f64 = 1e-9;

/// Shipped 24-node US backbone mesh.
pub const US_BACKBONE_TOPOLOGY: &str = include_str!("../data/us_backbone.topo");

/// Shipped five-node walkthrough network with pinned centrality and link values.
pub const FIG3_TOPOLOGY: &str = include_str!("../data/fig3.topo");
