//! Logical ports on a walk graph and the inject/readout boundary.
//!
//! A logical wire is a pair of parallel rails. A logical amplitude `c` is
//! injected as `c/√2` on each of the two input rails, and read back as
//! `√2` times the amplitude on output rail `a` once the walk has run for
//! exactly the graph's depth.

use std::collections::BTreeMap;
use std::f64::consts::SQRT_2;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::coin::WIRE_PHASE;
use crate::graph::{SlotRef, WalkGraph};
use crate::state::{WalkState, INPUT_NORM_TOL};

/// Leakage or rail mismatch beyond this fails a readout.
pub const SYNC_TOL: f64 = 1e-8;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum PortError {
    #[error("expected {expected} logical amplitudes, got {got}")]
    LengthMismatch { expected: usize, got: usize },
    #[error("logical input is not normalized: |norm² - 1| = {deviation:e}")]
    NotNormalized { deviation: f64 },
    #[error(
        "synchronization failure: leaked probability {leakage:e}, rail mismatch {rail_mismatch:e} \
         (worst column {column:?}, worst wire {wire:?})"
    )]
    Synchronization {
        column: Option<usize>,
        wire: Option<String>,
        leakage: f64,
        rail_mismatch: f64,
    },
}

/// A logical wire end: rail `a` (top) and rail `b` (bottom).
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Port {
    pub label: String,
    pub rails: [SlotRef; 2],
}

impl Port {
    pub fn new(label: impl Into<String>, a: SlotRef, b: SlotRef) -> Self {
        assert_ne!(a, b, "port rails must be distinct");
        Self {
            label: label.into(),
            rails: [a, b],
        }
    }

    /// The boundary vertex owning rail `a`.
    pub fn vertex(&self) -> usize {
        self.rails[0].vertex
    }
}

/// A walk graph with labelled input and output ports and a transit depth.
#[derive(Debug, Clone)]
pub struct PortedGraph {
    pub graph: WalkGraph,
    pub inputs: Vec<Port>,
    pub outputs: Vec<Port>,
    pub depth: usize,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Readout {
    /// `√2 ×` rail-`a` amplitude per output port.
    pub raw: Vec<Complex64>,
    /// `raw` with the per-step wire phase `e^{-iπ/4}` divided out.
    pub bookkept: Vec<Complex64>,
    /// Probability found anywhere other than the output rails.
    pub leakage: f64,
    /// Largest `|a − b|` over output rail pairs.
    pub max_rail_mismatch: f64,
    /// Column holding the most leaked probability.
    pub worst_column: Option<usize>,
    /// Output port with the largest rail mismatch.
    pub worst_wire: Option<String>,
}

impl Readout {
    pub fn check(&self, tol: f64) -> Result<(), PortError> {
        if self.leakage > tol || self.max_rail_mismatch > tol {
            return Err(PortError::Synchronization {
                column: self.worst_column,
                wire: self.worst_wire.clone(),
                leakage: self.leakage,
                rail_mismatch: self.max_rail_mismatch,
            });
        }
        Ok(())
    }
}

/// `e^{+i·depth·π/4}`, which undoes the bookkeeping phase of `depth` wire steps.
pub fn bookkeeping_correction(depth: usize) -> Complex64 {
    Complex64::from_polar(1.0, -(depth as f64) * WIRE_PHASE)
}

impl PortedGraph {
    pub fn width(&self) -> usize {
        self.inputs.len()
    }

    pub fn input_labels(&self) -> Vec<&str> {
        self.inputs.iter().map(|p| p.label.as_str()).collect()
    }

    pub fn output_labels(&self) -> Vec<&str> {
        self.outputs.iter().map(|p| p.label.as_str()).collect()
    }

    /// Walk state carrying `logical[w]/√2` on both input rails of port `w`.
    pub fn inject(&self, logical: &[Complex64]) -> Result<WalkState, PortError> {
        if logical.len() != self.inputs.len() {
            return Err(PortError::LengthMismatch {
                expected: self.inputs.len(),
                got: logical.len(),
            });
        }
        let norm: f64 = logical.iter().map(Complex64::norm_sqr).sum();
        let deviation = (norm - 1.0).abs();
        if deviation > INPUT_NORM_TOL {
            return Err(PortError::NotNormalized { deviation });
        }
        Ok(self.inject_unchecked(logical))
    }

    fn inject_unchecked(&self, logical: &[Complex64]) -> WalkState {
        let mut s = WalkState::zeros(&self.graph);
        let amps = s.amplitudes_mut();
        for (port, &c) in self.inputs.iter().zip(logical) {
            for rail in port.rails {
                amps[self.graph.slot_index(rail)] += c / SQRT_2;
            }
        }
        s
    }

    /// Injection of logical basis state `w`.
    pub fn basis_injection(&self, w: usize) -> WalkState {
        let mut logical = vec![Complex64::new(0.0, 0.0); self.inputs.len()];
        logical[w] = Complex64::new(1.0, 0.0);
        self.inject_unchecked(&logical)
    }

    /// Reads the logical amplitudes and diagnostics without judging them.
    pub fn measure(&self, state: &WalkState) -> Readout {
        let amps = state.amplitudes();
        let mut on_rails = vec![false; amps.len()];
        let mut raw = Vec::with_capacity(self.outputs.len());
        let mut rail_prob = 0.0;
        let mut max_rail_mismatch = 0.0;
        let mut worst_wire = None;
        for port in &self.outputs {
            let [a, b] = port.rails.map(|r| self.graph.slot_index(r));
            on_rails[a] = true;
            on_rails[b] = true;
            rail_prob += amps[a].norm_sqr() + amps[b].norm_sqr();
            let mismatch = (amps[a] - amps[b]).norm();
            if mismatch > max_rail_mismatch {
                max_rail_mismatch = mismatch;
                worst_wire = Some(port.label.clone());
            }
            raw.push(amps[a] * SQRT_2);
        }

        let mut by_column: BTreeMap<Option<usize>, f64> = BTreeMap::new();
        for (g, a) in amps.iter().enumerate() {
            if !on_rails[g] && a.norm_sqr() > 0.0 {
                let col = self.graph.vertex(self.graph.slot_ref(g).vertex).column;
                *by_column.entry(col).or_default() += a.norm_sqr();
            }
        }
        let worst_column = by_column
            .iter()
            .max_by(|x, y| x.1.total_cmp(y.1))
            .and_then(|(c, _)| *c);

        let total = state.norm_sqr();
        let correction = bookkeeping_correction(self.depth);
        Readout {
            bookkept: raw.iter().map(|c| c * correction).collect(),
            raw,
            leakage: (total - rail_prob).max(0.0),
            max_rail_mismatch,
            worst_column,
            worst_wire,
        }
    }

    /// Reads out `state`, failing if leakage or rail mismatch exceeds [`SYNC_TOL`].
    pub fn readout(&self, state: &WalkState) -> Result<Readout, PortError> {
        let r = self.measure(state);
        r.check(SYNC_TOL)?;
        Ok(r)
    }

    /// Inject, evolve for `depth` steps, and read out.
    pub fn run(&self, logical: &[Complex64]) -> Result<Readout, PortError> {
        let s = self.inject(logical)?;
        self.readout(&self.graph.evolve(&s, self.depth))
    }

    /// Like [`run`](Self::run) for a basis input, returning diagnostics even on failure.
    pub fn run_basis(&self, w: usize) -> Readout {
        let s = self.basis_injection(w);
        self.measure(&self.graph.evolve(&s, self.depth))
    }

    pub fn output_index(&self, label: &str) -> Option<usize> {
        self.outputs.iter().position(|p| p.label == label)
    }

    pub fn input_index(&self, label: &str) -> Option<usize> {
        self.inputs.iter().position(|p| p.label == label)
    }
}
