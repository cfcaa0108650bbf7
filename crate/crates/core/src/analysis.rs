//! Effective unitaries, circuit verification, and periodicity on cycles.

use std::f64::consts::{FRAC_1_SQRT_2, FRAC_PI_4};

use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::circuit::{CircuitIR, Gate};
use crate::coin::{phased_bias_coin, CoinError};
use crate::compile::{lower, qubit_mask};
use crate::graph::{cycle_graph, WalkGraph};
use crate::matrix::{ComplexMatrix, ONE, ZERO};
use crate::ports::{bookkeeping_correction, PortError, PortedGraph, SYNC_TOL};
use crate::state::{StateError, WalkState, INPUT_NORM_TOL};

/// Largest qubit count [`verify_circuit`] will build a dense oracle for.
pub const MAX_VERIFY_QUBITS: usize = 6;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum AnalysisError {
    #[error(transparent)]
    Port(#[from] PortError),
    #[error(transparent)]
    State(#[from] StateError),
    #[error(transparent)]
    Coin(#[from] CoinError),
    #[error("dimension mismatch: {0}x{1} vs {2}x{3}")]
    DimensionMismatch(usize, usize, usize, usize),
    #[error("circuit has {0} qubits; verification is limited to {MAX_VERIFY_QUBITS}")]
    TooManyQubits(usize),
    #[error(
        "fidelity {fidelity} below 1 - {tol:e} (leakage {leakage:e}, worst column {worst_column:?})"
    )]
    FidelityBelowTolerance {
        fidelity: f64,
        tol: f64,
        leakage: f64,
        worst_column: Option<usize>,
    },
}

/// Logical operator realized by a ported graph, column `w` being the
/// readout after injecting basis state `w`.
#[derive(Debug, Clone)]
pub struct EffectiveUnitary {
    pub matrix: ComplexMatrix,
    pub depth: usize,
    /// Largest off-rail probability over all basis injections.
    pub leakage: f64,
    pub max_rail_mismatch: f64,
    pub worst_column: Option<usize>,
}

impl EffectiveUnitary {
    /// The matrix with the `e^{-iπ/4}`-per-step wire phase divided out.
    pub fn bookkept(&self) -> ComplexMatrix {
        self.matrix.scale(bookkeeping_correction(self.depth))
    }
}

/// Runs every basis injection through `body` (in parallel) and assembles the
/// logical operator. Fails if any readout leaks more than [`SYNC_TOL`].
pub fn effective_unitary(body: &PortedGraph) -> Result<EffectiveUnitary, AnalysisError> {
    let readouts: Vec<_> = (0..body.width())
        .into_par_iter()
        .map(|w| body.run_basis(w))
        .collect();
    let dim = body.outputs.len();
    let mut matrix = ComplexMatrix::zeros(dim, body.width());
    for (w, r) in readouts.iter().enumerate() {
        for (i, &c) in r.raw.iter().enumerate() {
            matrix[(i, w)] = c;
        }
    }
    let worst = readouts
        .iter()
        .max_by(|a, b| a.leakage.total_cmp(&b.leakage))
        .expect("ported graphs have at least one input");
    let leakage = worst.leakage;
    let max_rail_mismatch = readouts
        .iter()
        .map(|r| r.max_rail_mismatch)
        .fold(0.0, f64::max);
    if let Some(bad) = readouts.iter().find(|r| r.check(SYNC_TOL).is_err()) {
        bad.check(SYNC_TOL)?;
    }
    Ok(EffectiveUnitary {
        matrix,
        depth: body.depth,
        leakage,
        max_rail_mismatch,
        worst_column: worst.worst_column,
    })
}

/// `(|tr(u†v)| / dim, arg tr(u†v))`.
pub fn compare_up_to_global_phase(
    u: &ComplexMatrix,
    v: &ComplexMatrix,
) -> Result<(f64, f64), AnalysisError> {
    if u.rows() != v.rows() || u.cols() != v.cols() || !u.is_square() {
        return Err(AnalysisError::DimensionMismatch(
            u.rows(),
            u.cols(),
            v.rows(),
            v.cols(),
        ));
    }
    let mut t = ZERO;
    for i in 0..u.rows() {
        for j in 0..u.cols() {
            t += u[(i, j)].conj() * v[(i, j)];
        }
    }
    Ok((t.norm() / u.rows() as f64, t.arg()))
}

/// The `2×2` Hadamard.
pub fn hadamard_gate_matrix() -> ComplexMatrix {
    let h = Complex64::new(FRAC_1_SQRT_2, 0.0);
    ComplexMatrix::from_rows(vec![vec![h, h], vec![h, -h]])
}

/// `diag(1, e^{iπ/4})`.
pub fn phase_gate_matrix() -> ComplexMatrix {
    ComplexMatrix::from_rows(vec![
        vec![ONE, ZERO],
        vec![ZERO, Complex64::from_polar(1.0, FRAC_PI_4)],
    ])
}

pub fn cnot_gate_matrix() -> ComplexMatrix {
    let mut m = ComplexMatrix::zeros(4, 4);
    for (i, j) in [(0, 0), (1, 1), (2, 3), (3, 2)] {
        m[(i, j)] = ONE;
    }
    m
}

/// The `2ⁿ × 2ⁿ` matrix of one gate, by direct index manipulation.
pub fn embed_gate(gate: &Gate, n: usize) -> ComplexMatrix {
    let dim = 1usize << n;
    match *gate {
        Gate::H(q) | Gate::P(q) => {
            let g = if matches!(gate, Gate::H(_)) {
                hadamard_gate_matrix()
            } else {
                phase_gate_matrix()
            };
            let m = qubit_mask(q, n);
            ComplexMatrix::from_fn(dim, dim, |i, j| {
                if i & !m != j & !m {
                    ZERO
                } else {
                    g[(usize::from(i & m != 0), usize::from(j & m != 0))]
                }
            })
        }
        Gate::Cnot { control, target } => {
            let (mc, mt) = (qubit_mask(control, n), qubit_mask(target, n));
            ComplexMatrix::from_fn(dim, dim, |i, j| {
                let image = if j & mc != 0 { j ^ mt } else { j };
                if i == image {
                    ONE
                } else {
                    ZERO
                }
            })
        }
    }
}

/// Circuit-model unitary: product of the embedded gates, last gate leftmost.
pub fn circuit_oracle(circuit: &CircuitIR) -> ComplexMatrix {
    let n = circuit.num_qubits();
    circuit
        .gates()
        .iter()
        .fold(ComplexMatrix::identity(1 << n), |acc, g| {
            embed_gate(g, n).matmul(&acc)
        })
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct VerifyReport {
    pub qubits: usize,
    pub gates: usize,
    pub depth: usize,
    pub vertices: usize,
    pub max_degree: usize,
    pub fidelity: f64,
    pub global_phase: f64,
    pub leakage: f64,
    pub max_rail_mismatch: f64,
}

/// Compiles `circuit`, extracts its effective unitary and compares it with
/// the gate-product oracle. Fails when fidelity drops below `1 − tol`.
pub fn verify_circuit(circuit: &CircuitIR, tol: f64) -> Result<VerifyReport, AnalysisError> {
    let n = circuit.num_qubits();
    if n > MAX_VERIFY_QUBITS {
        return Err(AnalysisError::TooManyQubits(n));
    }
    let compiled = lower(circuit);
    let eff = effective_unitary(&compiled.body)?;
    let oracle = circuit_oracle(circuit);
    let (fidelity, global_phase) = compare_up_to_global_phase(&oracle, &eff.matrix)?;
    if fidelity < 1.0 - tol {
        return Err(AnalysisError::FidelityBelowTolerance {
            fidelity,
            tol,
            leakage: eff.leakage,
            worst_column: eff.worst_column,
        });
    }
    Ok(VerifyReport {
        qubits: n,
        gates: circuit.gates().len(),
        depth: compiled.depth(),
        vertices: compiled.body.graph.num_vertices(),
        max_degree: compiled.body.graph.max_degree(),
        fidelity,
        global_phase,
        leakage: eff.leakage,
        max_rail_mismatch: eff.max_rail_mismatch,
    })
}

/// `|⟨ψ₀|ψ_t⟩|²` for `t = 0..=t_max`, starting from `coin_state` on the
/// slots of vertex index `start`.
pub fn return_fidelity_trace(
    graph: &WalkGraph,
    start: usize,
    coin_state: &[Complex64],
    t_max: usize,
) -> Result<Vec<f64>, AnalysisError> {
    let psi0 = WalkState::localized(graph, start, coin_state)?;
    psi0.check_normalized(INPUT_NORM_TOL)?;
    let mut out = Vec::with_capacity(t_max + 1);
    let mut psi = psi0.clone();
    out.push(psi0.inner(&psi).norm_sqr());
    for _ in 0..t_max {
        psi = graph.step(&psi);
        out.push(psi0.inner(&psi).norm_sqr());
    }
    Ok(out)
}

/// Smallest `t ≥ 1` with `trace[t] ≥ 1 − tol`.
pub fn find_period(trace: &[f64], tol: f64) -> Option<usize> {
    trace
        .iter()
        .enumerate()
        .skip(1)
        .find(|(_, &f)| f >= 1.0 - tol)
        .map(|(t, _)| t)
}

/// Outcome of the periodicity search for one cycle and coin setting.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PeriodReport {
    pub cycle_size: usize,
    pub delta: f64,
    /// Relative phase θ in `diag(1, e^{iθ}) H_bias`.
    pub coin_phase: f64,
    pub initial_coin: String,
    pub period: Option<usize>,
    /// First step with the whole walker on the opposite vertex; even
    /// cycles of size at least four only.
    pub transfer_step: Option<usize>,
}

/// Initial coin states tried by [`pst_scan`], as `(name, amplitudes)`.
pub fn candidate_coin_states() -> Vec<(&'static str, [Complex64; 2])> {
    let h = FRAC_1_SQRT_2;
    vec![
        ("0", [ONE, ZERO]),
        ("1", [ZERO, ONE]),
        ("+", [Complex64::new(h, 0.0), Complex64::new(h, 0.0)]),
        ("+i", [Complex64::new(h, 0.0), Complex64::new(0.0, h)]),
    ]
}

/// Default step budget for an `n`-cycle: `4n²`.
pub fn default_t_max(n: usize) -> usize {
    4 * n * n
}

/// Period and transfer step for one cycle, coin and initial coin state.
pub fn period_report(
    cycle_size: usize,
    delta: f64,
    coin_phase: f64,
    initial: (&str, [Complex64; 2]),
    t_max: usize,
    tol: f64,
) -> Result<PeriodReport, AnalysisError> {
    let coin = phased_bias_coin(delta, coin_phase)?;
    let graph = cycle_graph(cycle_size, &coin).expect("cycle is well formed");
    let psi0 = WalkState::localized(&graph, 0, &initial.1)?;
    let opposite = (cycle_size.is_multiple_of(2) && cycle_size >= 4).then_some(cycle_size / 2);
    let mut psi = psi0.clone();
    let mut period = None;
    let mut transfer_step = None;
    for t in 1..=t_max {
        psi = graph.step(&psi);
        if let (Some(o), None) = (opposite, transfer_step) {
            let p: f64 = psi.amplitudes()[graph.vertex(o).slots()]
                .iter()
                .map(Complex64::norm_sqr)
                .sum();
            if p >= 1.0 - tol {
                transfer_step = Some(t);
            }
        }
        if psi0.inner(&psi).norm_sqr() >= 1.0 - tol {
            period = Some(t);
            break;
        }
    }
    Ok(PeriodReport {
        cycle_size,
        delta,
        coin_phase,
        initial_coin: initial.0.to_string(),
        period,
        transfer_step,
    })
}

/// Evenly spaced grid of `steps` points over `[lo, hi]` (both ends included
/// when `steps ≥ 2`).
pub fn linear_grid(lo: f64, hi: f64, steps: usize) -> Vec<f64> {
    match steps {
        0 => vec![],
        1 => vec![lo],
        _ => (0..steps)
            .map(|k| lo + (hi - lo) * k as f64 / (steps - 1) as f64)
            .collect(),
    }
}

/// Searches biased, phased coins on cycles for periodic walks.
///
/// For every cycle size and `(δ, θ)` pair, each initial coin state of
/// [`candidate_coin_states`] is tried from vertex 0 and the report with the
/// shortest period kept. Reports are sorted by period (aperiodic last), then
/// by size and parameters. `t_max` defaults to `4n²` per cycle.
pub fn pst_scan(
    cycle_sizes: &[usize],
    delta_grid: &[f64],
    phase_grid: &[f64],
    t_max: Option<usize>,
    tol: f64,
) -> Result<Vec<PeriodReport>, AnalysisError> {
    let mut jobs = Vec::new();
    for &n in cycle_sizes {
        for &d in delta_grid {
            for &th in phase_grid {
                jobs.push((n, d, th));
            }
        }
    }
    let mut reports = jobs
        .into_par_iter()
        .map(|(n, d, th)| {
            let budget = t_max.unwrap_or_else(|| default_t_max(n));
            let mut best: Option<PeriodReport> = None;
            for init in candidate_coin_states() {
                let r = period_report(n, d, th, init, budget, tol)?;
                let better = match (&best, r.period) {
                    (None, _) => true,
                    (Some(b), Some(p)) => b.period.is_none_or(|bp| p < bp),
                    (Some(_), None) => false,
                };
                if better {
                    best = Some(r);
                }
            }
            Ok(best.expect("at least one candidate state"))
        })
        .collect::<Result<Vec<_>, AnalysisError>>()?;
    reports.sort_by(|a, b| {
        (a.period.is_none(), a.period, a.cycle_size)
            .cmp(&(b.period.is_none(), b.period, b.cycle_size))
            .then(a.delta.total_cmp(&b.delta))
            .then(a.coin_phase.total_cmp(&b.coin_phase))
    });
    Ok(reports)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coin::{hadamard_coin, pauli_x_coin};

    #[test]
    fn compare_examples() {
        let h = hadamard_gate_matrix();
        let rot = h.scale(Complex64::from_polar(1.0, 3.0 * FRAC_PI_4));
        let (f, p) = compare_up_to_global_phase(&h, &rot).unwrap();
        assert!((f - 1.0).abs() < 1e-15);
        assert!((p - 3.0 * FRAC_PI_4).abs() < 1e-15);

        let x = pauli_x_coin().effective_matrix();
        let (f, _) = compare_up_to_global_phase(&ComplexMatrix::identity(2), &x).unwrap();
        assert_eq!(f, 0.0);

        let (f, p) = compare_up_to_global_phase(&h, &h).unwrap();
        assert!((f - 1.0).abs() < 1e-15 && p.abs() < 1e-15);

        assert!(compare_up_to_global_phase(&h, &ComplexMatrix::identity(4)).is_err());
    }

    #[test]
    fn find_period_examples() {
        assert_eq!(find_period(&[1.0, 0.0, 0.0], 1e-6), None);
        assert_eq!(find_period(&[1.0, 0.2, 1.0 - 1e-9, 1.0], 1e-6), Some(2));
        assert_eq!(find_period(&[0.0; 10], 1e-6), None);
    }

    #[test]
    fn fidelity_trace_starts_at_one() {
        let g = cycle_graph(4, &hadamard_coin()).unwrap();
        let tr = return_fidelity_trace(&g, 0, &[ONE, ZERO], 8).unwrap();
        assert_eq!(tr[0], 1.0);
        assert!((tr[8] - 1.0).abs() < 1e-10);
        assert_eq!(find_period(&tr, 1e-6), Some(8));
    }

    #[test]
    fn embedding_matches_kron_for_single_qubit() {
        let p = embed_gate(&Gate::P(2), 2);
        let kron = ComplexMatrix::identity(2).kron(&phase_gate_matrix());
        assert!(p.max_abs_diff(&kron) == 0.0);
    }

    #[test]
    fn grid() {
        assert_eq!(linear_grid(0.0, 1.0, 3), vec![0.0, 0.5, 1.0]);
        assert_eq!(linear_grid(0.0, 1.0, 1), vec![0.0]);
        assert!(linear_grid(0.0, 1.0, 0).is_empty());
    }

    #[test]
    fn two_cycle_has_no_transfer_notion() {
        let r = period_report(2, 0.5, 0.0, candidate_coin_states()[0], 16, 1e-9).unwrap();
        assert!(r.transfer_step.is_none());
        assert!(r.period.is_some());
    }
}
