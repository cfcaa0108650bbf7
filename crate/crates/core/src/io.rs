//! File formats: graph and state JSON, ports sidecar, trace CSV.
//!
//! Vertices are referred to by their `id` in every file, never by index.

use std::collections::{BTreeMap, HashMap};
use std::fmt::Write as _;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::coin::{resolve_label, CoinSpec};
use crate::compile::{CompiledGraph, Placement};
use crate::engine::SimulationTrace;
use crate::graph::{GraphBuilder, GraphError, SlotRef, WalkGraph};
use crate::matrix::ComplexMatrix;
use crate::ports::{Port, PortedGraph};
use crate::state::{StateError, WalkState};

#[derive(Debug, Error)]
pub enum FormatError {
    #[error("malformed JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    State(#[from] StateError),
    #[error("port `{port}` refers to unknown vertex id {id}")]
    PortVertex { port: String, id: u64 },
    #[error("coin `{0}` matrix is ragged or empty")]
    RaggedMatrix(String),
}

/// `[vertex id, slot]`.
pub type SlotPair = (u64, usize);

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VertexRecord {
    pub id: u64,
    pub coin: String,
    pub slots: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub column: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub wire: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CoinRecord {
    pub matrix: Vec<Vec<[f64; 2]>>,
    #[serde(default)]
    pub phase: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GraphFile {
    pub vertices: Vec<VertexRecord>,
    pub edges: Vec<[SlotPair; 2]>,
    pub stubs: Vec<SlotPair>,
    /// Coins whose label is not one of the built-in names.
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub coins: BTreeMap<String, CoinRecord>,
}

pub fn matrix_to_pairs(m: &ComplexMatrix) -> Vec<Vec<[f64; 2]>> {
    m.to_rows()
        .into_iter()
        .map(|r| r.into_iter().map(|c| [c.re, c.im]).collect())
        .collect()
}

pub fn matrix_from_pairs(rows: &[Vec<[f64; 2]>]) -> Option<ComplexMatrix> {
    let n = rows.first()?.len();
    if n == 0 || rows.iter().any(|r| r.len() != n) {
        return None;
    }
    Some(ComplexMatrix::from_rows(
        rows.iter()
            .map(|r| r.iter().map(|&[re, im]| Complex64::new(re, im)).collect())
            .collect(),
    ))
}

/// JSON for one coin: its effective matrix, row-major, as `[re, im]` pairs.
pub fn coin_to_json(coin: &CoinSpec) -> String {
    serde_json::to_string(&matrix_to_pairs(&coin.effective_matrix())).expect("serializable")
}

fn slot_pair(g: &WalkGraph, s: SlotRef) -> SlotPair {
    (g.vertex(s.vertex).id, s.slot)
}

impl GraphFile {
    pub fn from_graph(g: &WalkGraph) -> Self {
        let vertices = g
            .vertices()
            .iter()
            .enumerate()
            .map(|(i, v)| VertexRecord {
                id: v.id,
                coin: g.coin_of(i).label().to_string(),
                slots: v.degree,
                column: v.column,
                wire: v.wire.clone(),
            })
            .collect();
        let edges = g
            .edges()
            .iter()
            .map(|&(a, b)| [slot_pair(g, a), slot_pair(g, b)])
            .collect();
        let stubs = g.stubs().iter().map(|&s| slot_pair(g, s)).collect();
        let coins = g
            .coins()
            .iter()
            .filter(|c| resolve_label(c.label()).ok().as_ref() != Some(*c))
            .map(|c| {
                (
                    c.label().to_string(),
                    CoinRecord {
                        matrix: matrix_to_pairs(c.base_matrix()),
                        phase: c.phase(),
                    },
                )
            })
            .collect();
        Self {
            vertices,
            edges,
            stubs,
            coins,
        }
    }

    pub fn to_graph(&self) -> Result<WalkGraph, FormatError> {
        let mut b = GraphBuilder::new();
        for (label, rec) in &self.coins {
            let m = matrix_from_pairs(&rec.matrix)
                .ok_or_else(|| FormatError::RaggedMatrix(label.clone()))?;
            let coin = CoinSpec::custom(label.clone(), m, rec.phase).map_err(GraphError::from)?;
            b.register_coin(&coin)?;
        }
        let mut index: HashMap<u64, usize> = HashMap::new();
        for v in &self.vertices {
            let i = b.add_labeled_vertex(Some(v.id), &v.coin, v.slots);
            if let Some(c) = v.column {
                b.set_column(i, c);
            }
            if let Some(w) = &v.wire {
                b.set_wire(i, w.clone());
            }
            index.insert(v.id, i);
        }
        let resolve = |(id, slot): SlotPair| -> Result<SlotRef, GraphError> {
            index
                .get(&id)
                .map(|&v| SlotRef::new(v, slot))
                .ok_or(GraphError::UnknownVertex(id))
        };
        for &[a, c] in &self.edges {
            b.connect(resolve(a)?, resolve(c)?);
        }
        for &s in &self.stubs {
            b.add_stub(resolve(s)?);
        }
        Ok(b.build()?)
    }
}

pub fn graph_to_json(g: &WalkGraph) -> String {
    serde_json::to_string_pretty(&GraphFile::from_graph(g)).expect("serializable")
}

pub fn graph_from_json(text: &str) -> Result<WalkGraph, FormatError> {
    let file: GraphFile = serde_json::from_str(text)?;
    file.to_graph()
}

/// State file entries: `[vertex id, slot, re, im]`.
pub type StateEntry = (u64, usize, f64, f64);

pub fn state_to_json(g: &WalkGraph, s: &WalkState) -> String {
    let entries: Vec<StateEntry> = s
        .to_entries(g)
        .into_iter()
        .map(|(id, slot, c)| (id, slot, c.re, c.im))
        .collect();
    serde_json::to_string(&entries).expect("serializable")
}

/// Parses a state file; repeated entries add up, missing ones are zero.
pub fn state_from_json(g: &WalkGraph, text: &str) -> Result<WalkState, FormatError> {
    let entries: Vec<StateEntry> = serde_json::from_str(text)?;
    let entries: Vec<(u64, usize, Complex64)> = entries
        .into_iter()
        .map(|(id, slot, re, im)| (id, slot, Complex64::new(re, im)))
        .collect();
    Ok(WalkState::from_entries(g, &entries)?)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PortRecord {
    pub label: String,
    pub rails: [SlotPair; 2],
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PortsFile {
    pub inputs: Vec<PortRecord>,
    pub outputs: Vec<PortRecord>,
    pub depth: usize,
}

impl PortsFile {
    pub fn from_ported(p: &PortedGraph) -> Self {
        let rec = |port: &Port| PortRecord {
            label: port.label.clone(),
            rails: port.rails.map(|r| slot_pair(&p.graph, r)),
        };
        Self {
            inputs: p.inputs.iter().map(rec).collect(),
            outputs: p.outputs.iter().map(rec).collect(),
            depth: p.depth,
        }
    }

    pub fn attach(&self, graph: WalkGraph) -> Result<PortedGraph, FormatError> {
        let port = |r: &PortRecord| -> Result<Port, FormatError> {
            let [a, b] = r.rails.map(|(id, slot)| {
                graph
                    .vertex_index(id)
                    .map(|v| SlotRef::new(v, slot))
                    .ok_or(id)
            });
            let missing = |id| FormatError::PortVertex {
                port: r.label.clone(),
                id,
            };
            Ok(Port::new(
                r.label.clone(),
                a.map_err(missing)?,
                b.map_err(missing)?,
            ))
        };
        let inputs = self.inputs.iter().map(port).collect::<Result<_, _>>()?;
        let outputs = self.outputs.iter().map(port).collect::<Result<_, _>>()?;
        Ok(PortedGraph {
            graph,
            inputs,
            outputs,
            depth: self.depth,
        })
    }
}

pub fn ports_to_json(p: &PortedGraph) -> String {
    serde_json::to_string_pretty(&PortsFile::from_ported(p)).expect("serializable")
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct PlacementReport {
    pub qubits: usize,
    pub depth: usize,
    pub vertices: usize,
    pub gates: Vec<Placement>,
}

pub fn placement_report(c: &CompiledGraph) -> PlacementReport {
    PlacementReport {
        qubits: c.num_qubits(),
        depth: c.depth(),
        vertices: c.body.graph.num_vertices(),
        gates: c.placements.clone(),
    }
}

/// `step,vertex,probability` rows for every step and vertex, vertex by id.
pub fn trace_to_csv(g: &WalkGraph, trace: &SimulationTrace) -> String {
    let mut out = String::from("step,vertex,probability\n");
    for (t, probs) in trace.vertex_probabilities(g).iter().enumerate() {
        for (v, p) in probs.iter().enumerate() {
            writeln!(out, "{t},{},{p}", g.vertex(v).id).expect("write to string");
        }
    }
    out
}

/// Full amplitude dump: one list of `[vertex id, slot, re, im]` per step.
pub fn trace_amplitudes_json(g: &WalkGraph, trace: &SimulationTrace) -> String {
    let steps: Vec<Vec<StateEntry>> = trace
        .snapshots
        .iter()
        .map(|s| {
            s.to_entries(g)
                .into_iter()
                .map(|(id, slot, c)| (id, slot, c.re, c.im))
                .collect()
        })
        .collect();
    serde_json::to_string(&steps).expect("serializable")
}
