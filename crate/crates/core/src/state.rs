use num_complex::Complex64;
use thiserror::Error;

use crate::graph::{SlotRef, WalkGraph};
use crate::matrix::ZERO;

/// Norm deviation above which an input state is rejected.
pub const INPUT_NORM_TOL: f64 = 1e-8;

/// Norm deviation tolerated in a valid state after evolution.
pub const STATE_NORM_TOL: f64 = 1e-10;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum StateError {
    #[error("state has {got} amplitudes but the graph has {expected} slots")]
    LengthMismatch { expected: usize, got: usize },
    #[error("state refers to unknown vertex id {0}")]
    UnknownVertex(u64),
    #[error("state refers to slot {slot} of vertex {vertex}, which has {degree} slots")]
    SlotOutOfRange {
        vertex: u64,
        slot: usize,
        degree: usize,
    },
    #[error("state is not normalized: |norm² - 1| = {deviation:e}")]
    NotNormalized { deviation: f64 },
}

/// One complex amplitude per `(vertex, slot)` of a particular graph.
#[derive(Debug, Clone, PartialEq)]
pub struct WalkState {
    amps: Vec<Complex64>,
}

impl WalkState {
    pub fn zeros(graph: &WalkGraph) -> Self {
        Self {
            amps: vec![ZERO; graph.num_slots()],
        }
    }

    pub fn from_amplitudes(amps: Vec<Complex64>) -> Self {
        Self { amps }
    }

    /// Amplitudes `coin_state` on the slots of vertex index `v`, zero elsewhere.
    pub fn localized(
        graph: &WalkGraph,
        v: usize,
        coin_state: &[Complex64],
    ) -> Result<Self, StateError> {
        let vertex = graph.vertex(v);
        if coin_state.len() != vertex.degree {
            return Err(StateError::LengthMismatch {
                expected: vertex.degree,
                got: coin_state.len(),
            });
        }
        let mut s = Self::zeros(graph);
        s.amps[vertex.slots()].copy_from_slice(coin_state);
        Ok(s)
    }

    /// Builds a state from `(vertex id, slot, amplitude)` triples.
    /// Repeated entries for the same slot are summed.
    pub fn from_entries(
        graph: &WalkGraph,
        entries: &[(u64, usize, Complex64)],
    ) -> Result<Self, StateError> {
        let mut s = Self::zeros(graph);
        for &(id, slot, amp) in entries {
            let v = graph
                .vertex_index(id)
                .ok_or(StateError::UnknownVertex(id))?;
            let degree = graph.vertex(v).degree;
            if slot >= degree {
                return Err(StateError::SlotOutOfRange {
                    vertex: id,
                    slot,
                    degree,
                });
            }
            s.amps[graph.slot_index(SlotRef::new(v, slot))] += amp;
        }
        Ok(s)
    }

    /// Non-zero amplitudes as `(vertex id, slot, amplitude)` triples, in slot order.
    pub fn to_entries(&self, graph: &WalkGraph) -> Vec<(u64, usize, Complex64)> {
        self.amps
            .iter()
            .enumerate()
            .filter(|(_, a)| **a != ZERO)
            .map(|(g, &a)| {
                let r = graph.slot_ref(g);
                (graph.vertex(r.vertex).id, r.slot, a)
            })
            .collect()
    }

    pub fn len(&self) -> usize {
        self.amps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.amps.is_empty()
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amps
    }

    pub fn amplitudes_mut(&mut self) -> &mut [Complex64] {
        &mut self.amps
    }

    pub fn into_amplitudes(self) -> Vec<Complex64> {
        self.amps
    }

    pub fn norm_sqr(&self) -> f64 {
        self.amps.iter().map(Complex64::norm_sqr).sum()
    }

    /// `⟨self|other⟩`.
    pub fn inner(&self, other: &Self) -> Complex64 {
        self.amps
            .iter()
            .zip(&other.amps)
            .map(|(a, b)| a.conj() * b)
            .sum()
    }

    /// Probability of finding the walker at each vertex.
    pub fn vertex_probabilities(&self, graph: &WalkGraph) -> Vec<f64> {
        graph
            .vertices()
            .iter()
            .map(|v| self.amps[v.slots()].iter().map(Complex64::norm_sqr).sum())
            .collect()
    }

    pub fn check_normalized(&self, tol: f64) -> Result<(), StateError> {
        let deviation = (self.norm_sqr() - 1.0).abs();
        if deviation > tol {
            return Err(StateError::NotNormalized { deviation });
        }
        Ok(())
    }

    pub(crate) fn check_len(&self, graph: &WalkGraph) -> Result<(), StateError> {
        if self.amps.len() != graph.num_slots() {
            return Err(StateError::LengthMismatch {
                expected: graph.num_slots(),
                got: self.amps.len(),
            });
        }
        Ok(())
    }
}
