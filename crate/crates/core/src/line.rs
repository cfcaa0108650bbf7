//! The walk on a line, embedded as a path graph.
//!
//! Vertex `i` sits at position `x = i − L`; slot 0 points left and slot 1
//! points right. Under the flip-flop shift, amplitude that just moved left
//! arrives on the right-pointing slot, so the position/coin basis state
//! `|x, 0⟩` (moving left) lives on slot 1 and `|x, 1⟩` on slot 0. Paired
//! with [`hadamard_flipflop_coin`] the path reproduces the moving-shift
//! Hadamard walk amplitude for amplitude.

use num_complex::Complex64;

use crate::coin::hadamard_flipflop_coin;
use crate::engine::SimulationTrace;
use crate::graph::{GraphBuilder, SlotRef, WalkGraph};
use crate::state::{StateError, WalkState};

/// Path graph over positions `−half_width..=half_width`, stubs at both ends.
pub fn line_graph(half_width: usize) -> WalkGraph {
    let coin = hadamard_flipflop_coin();
    let n = 2 * half_width + 1;
    let mut b = GraphBuilder::new();
    for i in 0..n {
        let v = b.add_vertex(&coin);
        b.set_column(v, i);
    }
    for i in 0..n - 1 {
        b.connect(SlotRef::new(i, 1), SlotRef::new(i + 1, 0));
    }
    b.add_stub(SlotRef::new(0, 0));
    b.add_stub(SlotRef::new(n - 1, 1));
    b.build().expect("path graph is well formed")
}

#[derive(Debug, Clone)]
pub struct LineTrace {
    pub graph: WalkGraph,
    pub trace: SimulationTrace,
    pub half_width: usize,
}

impl LineTrace {
    fn slot_for(&self, x: i64, c: usize) -> Option<usize> {
        let i = x + self.half_width as i64;
        if i < 0 || i as usize >= self.graph.num_vertices() || c > 1 {
            return None;
        }
        Some(self.graph.slot_index(SlotRef::new(i as usize, 1 - c)))
    }

    /// Amplitude of `|x, c⟩` after `t` steps.
    pub fn amplitude(&self, t: usize, x: i64, c: usize) -> Complex64 {
        self.slot_for(x, c).map_or(Complex64::new(0.0, 0.0), |g| {
            self.trace.snapshots[t].amplitudes()[g]
        })
    }

    /// `(position, probability)` for every position on the path.
    pub fn position_probabilities(&self, t: usize) -> Vec<(i64, f64)> {
        self.trace.snapshots[t]
            .vertex_probabilities(&self.graph)
            .into_iter()
            .enumerate()
            .map(|(i, p)| (i as i64 - self.half_width as i64, p))
            .collect()
    }

    pub fn std_dev(&self, t: usize) -> f64 {
        let probs = self.position_probabilities(t);
        let mean: f64 = probs.iter().map(|&(x, p)| x as f64 * p).sum();
        let var: f64 = probs
            .iter()
            .map(|&(x, p)| (x as f64 - mean).powi(2) * p)
            .sum();
        var.sqrt()
    }
}

/// Runs the Hadamard line walk for `t` steps from `initial_coin` at the origin,
/// given as amplitudes of `(|0, 0⟩, |0, 1⟩)`.
pub fn line_walk(t: usize, initial_coin: [Complex64; 2]) -> Result<LineTrace, StateError> {
    let half_width = t + 1;
    let graph = line_graph(half_width);
    let origin = half_width;
    // |0,0> on the right slot, |0,1> on the left slot
    let state = WalkState::localized(&graph, origin, &[initial_coin[1], initial_coin[0]])?;
    let trace = graph.simulate(&state, t)?;
    Ok(LineTrace {
        graph,
        trace,
        half_width,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::FRAC_1_SQRT_2;

    const ORIGIN_HEADS: [Complex64; 2] = [Complex64::new(1.0, 0.0), Complex64::new(0.0, 0.0)];

    #[test]
    fn one_step() {
        let lt = line_walk(1, ORIGIN_HEADS).unwrap();
        assert!((lt.amplitude(1, -1, 0).re - FRAC_1_SQRT_2).abs() < 1e-15);
        assert!((lt.amplitude(1, 1, 1).re - FRAC_1_SQRT_2).abs() < 1e-15);
        let p: Vec<_> = lt
            .position_probabilities(1)
            .into_iter()
            .filter(|&(_, p)| p > 1e-15)
            .collect();
        assert_eq!(p.len(), 2);
        assert!((p[0].1 - 0.5).abs() < 1e-15 && p[0].0 == -1);
        assert!((p[1].1 - 0.5).abs() < 1e-15 && p[1].0 == 1);
    }

    #[test]
    fn path_has_room() {
        let lt = line_walk(5, ORIGIN_HEADS).unwrap();
        assert!(lt.graph.num_vertices() >= 11);
        assert!((lt.trace.final_state().norm_sqr() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn rejects_unnormalized_coin() {
        let bad = [Complex64::new(1.0, 0.0), Complex64::new(1.0, 0.0)];
        assert!(line_walk(2, bad).is_err());
    }
}
