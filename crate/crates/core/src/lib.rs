//! Desk-scale simulation and benchmarking of inter-branch message-transfer
//! circuits.
//!
//! The crate provides, in dependency order:
//!
//! - [`circuit`]: a flat gate-list IR with named registers and the two-qubit
//!   depth/count statistics every other module reports.
//! - [`protocol`]: builders for the message-transfer protocol, its no-swap
//!   and no-uncompute controls, the three message families, and the
//!   divergence ("cousins") and amplitude stress variants.
//! - [`statevector`] and [`stabilizer`]: interchangeable exact and
//!   Clifford-scalable backends with per-shot Pauli/readout noise
//!   trajectories ([`noise`]), producing [`outcome`] tables.
//! - [`coupling`] and [`router`]: hardware connectivity graphs and a seeded
//!   shortest-path SWAP inserter with an exact-equivalence checker.
//! - [`metrics`]: transfer, erasure, branch-contrast, mutual-information,
//!   and frontier statistics over outcome tables.

pub mod circuit;
pub mod coupling;
pub mod metrics;
pub mod noise;
pub mod outcome;
pub mod protocol;
pub mod router;
pub mod sim;
pub mod stabilizer;
pub mod statevector;
pub mod testkit;

pub use circuit::{Circuit, CircuitError, CountMode, Gate, Register, RegisterMap};
pub use coupling::{CouplingError, CouplingMap};
pub use metrics::{MetricsError, MetricsRecord};
pub use noise::{NoiseError, NoiseModel};
pub use outcome::{OutcomeDistribution, ShotTable};
pub use protocol::{build, Family, MessageSpec, ProtocolError, ProtocolKind, VariantSpec};
pub use router::{
    initial_layout, route, verify_equivalence, Layout, LayoutStrategy, RoutedCircuit, RouterError,
};
pub use sim::SimError;
pub use stabilizer::{sample_stabilizer, Tableau};
pub use statevector::{
    run_exact, run_exact_with_limit, sample_statevector, sample_statevector_with_limit,
    DEFAULT_STATEVECTOR_LIMIT,
};
