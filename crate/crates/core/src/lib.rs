//! Symbolic calculus and numerical verification for continuous-variable
//! hypergraph states.
//!
//! The symbolic layer builds weighted hypergraph states over qumodes,
//! derives their nullifiers and stabilizers, and rewrites homodyne (q/p)
//! measurements in closed form where a rule applies. The numeric layer
//! realizes the same states as finite-squeezing wavefunctions on a grid and
//! checks every rewrite by fidelity, quadrature integration and homodyne
//! projection.

pub mod error;
pub mod hypergraph;
pub mod measurement;
pub mod nullifier;
pub mod numerics;
pub mod poly;
pub mod protocols;
pub mod scenarios;
pub mod state;

pub use error::{Error, Result};
pub use hypergraph::{
    build_3cluster, example_graph, example_graph_compact, lattice_layout, Hypergraph,
    LatticeLayout, LatticeSpec,
};
pub use measurement::{
    measure_p, measure_q, measure_q_canonical, parse_script, reduce_integral, run_script, Basis,
    IntegralState, MeasurementRecord, ReduceOutcome, ScriptOutcome,
};
pub use nullifier::{
    check_annihilation, commutator, decompose, nullifier, stabilizer, verify_nullifier,
    Annihilation, NullifierOp, StabilizerExpr,
};
pub use numerics::{
    apply_stabilizer, fidelity, realize, realize_integral, Bindings, GridSpec, Quadrature,
    WaveFunction, Wavepacket,
};
pub use poly::{PhasePolynomial, EPS_WEIGHT};
pub use protocols::{
    cubic_phase_gate, lattice_to_cluster, prepare_cubic_ancilla, teleport_3edge, unit_cell,
    CellRef, CubicRoute, SqueezeClass, SqueezeReport,
};
pub use state::{GaussianOp, ModeBase, StateExpr};
