//! Coin-then-shift evolution.
//!
//! One step applies every vertex's coin to the amplitudes on that vertex's
//! slots, then swaps the amplitudes at the two ends of every edge
//! (flip-flop shift). Amplitude sitting on a stub is left where it is.

use num_complex::Complex64;

use crate::graph::WalkGraph;
use crate::state::{StateError, WalkState, INPUT_NORM_TOL};

/// States recorded at steps `0..=steps`.
#[derive(Debug, Clone)]
pub struct SimulationTrace {
    pub steps: usize,
    pub snapshots: Vec<WalkState>,
}

impl SimulationTrace {
    pub fn initial(&self) -> &WalkState {
        &self.snapshots[0]
    }

    pub fn final_state(&self) -> &WalkState {
        self.snapshots
            .last()
            .expect("trace always holds the initial state")
    }

    /// Row `t` holds the per-vertex probabilities after `t` steps.
    pub fn vertex_probabilities(&self, graph: &WalkGraph) -> Vec<Vec<f64>> {
        self.snapshots
            .iter()
            .map(|s| s.vertex_probabilities(graph))
            .collect()
    }
}

impl WalkGraph {
    fn coin_into(&self, input: &[Complex64], out: &mut [Complex64]) {
        for (v, vertex) in self.vertices().iter().enumerate() {
            let range = vertex.slots();
            let m = self.coin_matrix_of(v);
            let x = &input[range.clone()];
            for (i, o) in out[range].iter_mut().enumerate() {
                *o = m.row(i).iter().zip(x).map(|(a, b)| a * b).sum();
            }
        }
    }

    fn shift_into(&self, input: &[Complex64], out: &mut [Complex64]) {
        for (g, o) in out.iter_mut().enumerate() {
            *o = input[self.partner(g).unwrap_or(g)];
        }
    }

    /// Applies each vertex's coin to its own slots.
    pub fn apply_coin(&self, state: &WalkState) -> WalkState {
        assert_eq!(
            state.len(),
            self.num_slots(),
            "state bound to another graph"
        );
        let mut out = WalkState::zeros(self);
        self.coin_into(state.amplitudes(), out.amplitudes_mut());
        out
    }

    /// Exchanges amplitudes across every edge; stub amplitudes stay put.
    pub fn apply_shift(&self, state: &WalkState) -> WalkState {
        assert_eq!(
            state.len(),
            self.num_slots(),
            "state bound to another graph"
        );
        let mut out = WalkState::zeros(self);
        self.shift_into(state.amplitudes(), out.amplitudes_mut());
        out
    }

    /// One walk step: coin, then shift.
    pub fn step(&self, state: &WalkState) -> WalkState {
        self.apply_shift(&self.apply_coin(state))
    }

    /// Advances `state` by `t` steps without keeping intermediate states.
    pub fn evolve(&self, state: &WalkState, t: usize) -> WalkState {
        assert_eq!(
            state.len(),
            self.num_slots(),
            "state bound to another graph"
        );
        let mut cur = state.amplitudes().to_vec();
        let mut tmp = cur.clone();
        for _ in 0..t {
            self.coin_into(&cur, &mut tmp);
            self.shift_into(&tmp, &mut cur);
        }
        WalkState::from_amplitudes(cur)
    }

    /// Runs `t` steps from a normalized `initial` state, recording every state.
    pub fn simulate(&self, initial: &WalkState, t: usize) -> Result<SimulationTrace, StateError> {
        initial.check_len(self)?;
        initial.check_normalized(INPUT_NORM_TOL)?;
        let mut snapshots = Vec::with_capacity(t + 1);
        snapshots.push(initial.clone());
        for _ in 0..t {
            let next = self.step(snapshots.last().unwrap());
            snapshots.push(next);
        }
        Ok(SimulationTrace {
            steps: t,
            snapshots,
        })
    }
}
