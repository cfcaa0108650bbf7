//! Python bindings for `qwalk`.
//!
//! Graphs, states and ports cross the boundary as the same JSON documents the
//! command-line tool reads and writes.

use std::f64::consts::PI;

use num_complex::Complex64;
use pyo3::exceptions::{PyRuntimeError, PyValueError};
use pyo3::prelude::*;
use pyo3::types::PyDict;

use qwalk::analysis::linear_grid;
use qwalk::io::{graph_from_json, graph_to_json, placement_report, ports_to_json, state_from_json};
use qwalk::ComplexMatrix;

fn value_err(e: impl std::fmt::Display) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn to_rows(m: &ComplexMatrix) -> Vec<Vec<Complex64>> {
    (0..m.rows()).map(|i| m.row(i).to_vec()).collect()
}

fn from_rows(rows: Vec<Vec<Complex64>>) -> PyResult<ComplexMatrix> {
    let n = rows.len();
    if rows.iter().any(|r| r.len() != n) {
        return Err(PyValueError::new_err("matrix must be square"));
    }
    Ok(ComplexMatrix::from_fn(n, n, |i, j| rows[i][j]))
}

/// Effective matrix of a labelled coin, as rows of complex numbers.
#[pyfunction]
fn coin(label: &str) -> PyResult<Vec<Vec<Complex64>>> {
    let c = qwalk::resolve_label(label).map_err(value_err)?;
    Ok(to_rows(&c.effective_matrix()))
}

/// Position probabilities `[(x, p), ...]` of the Hadamard line walk after `t` steps.
#[pyfunction]
fn line_walk(t: usize, a0: Complex64, a1: Complex64) -> PyResult<Vec<(i64, f64)>> {
    let trace = qwalk::line_walk(t, [a0, a1]).map_err(value_err)?;
    Ok(trace.position_probabilities(t))
}

/// Per-step vertex probabilities for a graph and state given as JSON.
#[pyfunction]
fn simulate(graph_json: &str, state_json: &str, steps: usize) -> PyResult<Vec<Vec<f64>>> {
    let g = graph_from_json(graph_json).map_err(value_err)?;
    let s = state_from_json(&g, state_json).map_err(value_err)?;
    let trace = g.simulate(&s, steps).map_err(value_err)?;
    Ok(trace.vertex_probabilities(&g))
}

/// `(graph_json, ports_json)` for a named gadget.
#[pyfunction]
#[pyo3(signature = (name, length=None))]
fn gadget(name: &str, length: Option<usize>) -> PyResult<(String, String)> {
    let g = qwalk::gadget::by_name(name, length)
        .ok_or_else(|| PyValueError::new_err(format!("unknown gadget `{name}`")))?;
    Ok((graph_to_json(&g.body.graph), ports_to_json(&g.body)))
}

/// `(graph_json, ports_json, placement_json)` for a circuit source text.
#[pyfunction]
fn compile(source: &str) -> PyResult<(String, String, String)> {
    let circuit = qwalk::parse_circuit(source).map_err(value_err)?;
    let compiled = qwalk::lower(&circuit);
    let placement = serde_json::to_string(&placement_report(&compiled))
        .map_err(|e| PyRuntimeError::new_err(e.to_string()))?;
    Ok((
        graph_to_json(&compiled.body.graph),
        ports_to_json(&compiled.body),
        placement,
    ))
}

#[pyfunction]
#[pyo3(signature = (source, tol=1e-9))]
fn verify<'py>(py: Python<'py>, source: &str, tol: f64) -> PyResult<Bound<'py, PyDict>> {
    let circuit = qwalk::parse_circuit(source).map_err(value_err)?;
    let r = qwalk::verify_circuit(&circuit, tol).map_err(value_err)?;
    let d = PyDict::new(py);
    d.set_item("qubits", r.qubits)?;
    d.set_item("gates", r.gates)?;
    d.set_item("depth", r.depth)?;
    d.set_item("vertices", r.vertices)?;
    d.set_item("max_degree", r.max_degree)?;
    d.set_item("fidelity", r.fidelity)?;
    d.set_item("global_phase", r.global_phase)?;
    d.set_item("leakage", r.leakage)?;
    d.set_item("max_rail_mismatch", r.max_rail_mismatch)?;
    Ok(d)
}

/// Periodicity scan; each row is `(size, delta, phase, initial_coin, period, transfer_step)`.
#[pyfunction]
#[pyo3(signature = (sizes, delta_steps=5, phase_steps=4, max_steps=None, tol=1e-9))]
#[allow(clippy::type_complexity)]
fn pst(
    sizes: Vec<usize>,
    delta_steps: usize,
    phase_steps: usize,
    max_steps: Option<usize>,
    tol: f64,
) -> PyResult<Vec<(usize, f64, f64, String, Option<usize>, Option<usize>)>> {
    let deltas = linear_grid(0.0, 1.0, delta_steps);
    let phases: Vec<f64> = (0..phase_steps)
        .map(|k| 2.0 * PI * k as f64 / phase_steps as f64)
        .collect();
    let reports = qwalk::pst_scan(&sizes, &deltas, &phases, max_steps, tol).map_err(value_err)?;
    Ok(reports
        .into_iter()
        .map(|r| {
            (
                r.cycle_size,
                r.delta,
                r.coin_phase,
                r.initial_coin,
                r.period,
                r.transfer_step,
            )
        })
        .collect())
}

/// `(fidelity, phase)` of `v` against `u` up to a global phase.
#[pyfunction]
fn compare(u: Vec<Vec<Complex64>>, v: Vec<Vec<Complex64>>) -> PyResult<(f64, f64)> {
    qwalk::compare_up_to_global_phase(&from_rows(u)?, &from_rows(v)?).map_err(value_err)
}

#[pymodule]
fn pyqwalk(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_function(wrap_pyfunction!(coin, m)?)?;
    m.add_function(wrap_pyfunction!(line_walk, m)?)?;
    m.add_function(wrap_pyfunction!(simulate, m)?)?;
    m.add_function(wrap_pyfunction!(gadget, m)?)?;
    m.add_function(wrap_pyfunction!(compile, m)?)?;
    m.add_function(wrap_pyfunction!(verify, m)?)?;
    m.add_function(wrap_pyfunction!(pst, m)?)?;
    m.add_function(wrap_pyfunction!(compare, m)?)?;
    Ok(())
}
