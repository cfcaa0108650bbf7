//! Discrete-time coined quantum walks on graphs with ordered slots, and a
//! toolkit for building logic gadgets and compiling circuits into walks.
//!
//! ```
//! use qwalk::{line_walk, ONE, ZERO};
//!
//! let trace = line_walk(3, [ZERO, ONE]).unwrap();
//! let p: f64 = trace.position_probabilities(3).iter().map(|(_, p)| p).sum();
//! assert!((p - 1.0).abs() < 1e-12);
//! ```

pub mod analysis;
pub mod circuit;
pub mod coin;
pub mod compile;
pub mod engine;
pub mod gadget;
pub mod graph;
pub mod io;
pub mod line;
pub mod matrix;
pub mod ports;
pub mod state;

pub use analysis::{
    circuit_oracle, compare_up_to_global_phase, effective_unitary, find_period, pst_scan,
    return_fidelity_trace, verify_circuit, AnalysisError, EffectiveUnitary, PeriodReport,
    VerifyReport,
};
pub use circuit::{parse_circuit, CircuitIR, Gate, GateKind, ParseError};
pub use coin::{
    biased_coin, check_unitary, complex_hadamard_coin, g8_coin, g8_from_tensor, grover_coin,
    hadamard_coin, hadamard_flipflop_coin, pauli_x_coin, phased_bias_coin, phased_grover_coin,
    resolve_label, wire_coin, CoinError, CoinSpec, UNITARY_TOL, WIRE_PHASE,
};
pub use compile::{lower, CompiledGraph, Placement};
pub use engine::SimulationTrace;
pub use gadget::{
    compose, make_cnot, make_hadamard_gate, make_mixer, make_phase_gate, make_wire,
    make_wire_with_phase, Gadget, GadgetError,
};
pub use graph::{cycle_graph, GraphBuilder, GraphError, SlotRef, Vertex, WalkGraph};
pub use io::FormatError;
pub use line::{line_graph, line_walk, LineTrace};
pub use matrix::{ComplexMatrix, ONE, ZERO};
pub use ports::{Port, PortError, PortedGraph, Readout, SYNC_TOL};
pub use state::{StateError, WalkState, INPUT_NORM_TOL, STATE_NORM_TOL};

pub use num_complex::Complex64;
