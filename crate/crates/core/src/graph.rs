//! Walk graphs: undirected multigraphs with explicitly ordered slots.
//!
//! Every vertex owns `degree` slots (incident half-edges). Each slot is
//! either joined to exactly one other slot by an edge or is a terminal stub.
//! Slots are numbered globally as `offset(v) + slot`, which is also the
//! index into a [`WalkState`](crate::WalkState)'s amplitude vector.

use std::collections::{BTreeMap, BTreeSet, HashMap};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::coin::{resolve_label, CoinError, CoinSpec};
use crate::matrix::ComplexMatrix;

/// One slot of one vertex, addressed by vertex index.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct SlotRef {
    pub vertex: usize,
    pub slot: usize,
}

impl SlotRef {
    pub const fn new(vertex: usize, slot: usize) -> Self {
        Self { vertex, slot }
    }
}

#[derive(Debug, Error, Clone, PartialEq)]
pub enum GraphError {
    #[error("duplicate vertex id {0}")]
    DuplicateVertexId(u64),
    #[error("reference to unknown vertex id {0}")]
    UnknownVertex(u64),
    #[error("vertex {vertex} has {degree} slots, slot {slot} is out of range")]
    SlotOutOfRange {
        vertex: u64,
        slot: usize,
        degree: usize,
    },
    #[error("slot ({vertex}, {slot}) is used by more than one edge or stub")]
    SlotReused { vertex: u64, slot: usize },
    #[error("slot ({vertex}, {slot}) is dangling: it belongs to no edge and no stub")]
    DanglingSlot { vertex: u64, slot: usize },
    #[error("edge joins slot ({vertex}, {slot}) to itself")]
    DegenerateEdge { vertex: u64, slot: usize },
    #[error("vertex {vertex} has {slots} slots but coin `{coin}` has degree {coin_degree}")]
    CoinDegreeMismatch {
        vertex: u64,
        coin: String,
        coin_degree: usize,
        slots: usize,
    },
    #[error("vertex {vertex} uses unknown coin label `{label}`")]
    UnknownCoin { vertex: u64, label: String },
    #[error("coin label `{0}` is bound to two different matrices")]
    CoinConflict(String),
    #[error("invalid coin: {0}")]
    Coin(#[from] CoinError),
}

#[derive(Debug, Clone, PartialEq)]
pub struct Vertex {
    pub id: u64,
    pub degree: usize,
    pub column: Option<usize>,
    pub wire: Option<String>,
    coin: usize,
    offset: usize,
}

impl Vertex {
    pub fn offset(&self) -> usize {
        self.offset
    }

    pub fn slots(&self) -> std::ops::Range<usize> {
        self.offset..self.offset + self.degree
    }
}

/// A validated, immutable walk graph.
#[derive(Debug, Clone)]
pub struct WalkGraph {
    vertices: Vec<Vertex>,
    coins: Vec<CoinSpec>,
    coin_matrices: Vec<ComplexMatrix>,
    edges: Vec<(SlotRef, SlotRef)>,
    stubs: Vec<SlotRef>,
    partner: Vec<Option<usize>>,
    slot_owner: Vec<usize>,
    id_index: HashMap<u64, usize>,
}

impl WalkGraph {
    pub fn num_vertices(&self) -> usize {
        self.vertices.len()
    }

    pub fn num_slots(&self) -> usize {
        self.partner.len()
    }

    pub fn vertices(&self) -> &[Vertex] {
        &self.vertices
    }

    pub fn vertex(&self, v: usize) -> &Vertex {
        &self.vertices[v]
    }

    pub fn vertex_index(&self, id: u64) -> Option<usize> {
        self.id_index.get(&id).copied()
    }

    pub fn edges(&self) -> &[(SlotRef, SlotRef)] {
        &self.edges
    }

    pub fn stubs(&self) -> &[SlotRef] {
        &self.stubs
    }

    pub fn coins(&self) -> &[CoinSpec] {
        &self.coins
    }

    pub fn coin_of(&self, v: usize) -> &CoinSpec {
        &self.coins[self.vertices[v].coin]
    }

    /// Phase-inclusive coin matrix applied at vertex `v`.
    pub fn coin_matrix_of(&self, v: usize) -> &ComplexMatrix {
        &self.coin_matrices[self.vertices[v].coin]
    }

    pub fn slot_index(&self, s: SlotRef) -> usize {
        debug_assert!(s.slot < self.vertices[s.vertex].degree);
        self.vertices[s.vertex].offset + s.slot
    }

    pub fn slot_ref(&self, global: usize) -> SlotRef {
        let v = self.slot_owner[global];
        SlotRef::new(v, global - self.vertices[v].offset)
    }

    /// The slot across the edge, or `None` for a stub.
    pub fn partner(&self, global: usize) -> Option<usize> {
        self.partner[global]
    }

    pub fn is_stub(&self, global: usize) -> bool {
        self.partner[global].is_none()
    }

    pub fn max_degree(&self) -> usize {
        self.vertices.iter().map(|v| v.degree).max().unwrap_or(0)
    }

    /// Copies the graph back into a mutable builder, preserving vertex order.
    pub fn to_builder(&self) -> GraphBuilder {
        let mut b = GraphBuilder::new();
        for coin in &self.coins {
            b.coins.insert(coin.label().to_string(), coin.clone());
        }
        for v in &self.vertices {
            b.vertices.push(VertexDraft {
                id: v.id,
                coin: self.coins[v.coin].label().to_string(),
                degree: v.degree,
                column: v.column,
                wire: v.wire.clone(),
            });
        }
        b.edges = self.edges.clone();
        b.stubs = self.stubs.iter().copied().collect();
        b
    }
}

#[derive(Debug, Clone)]
pub(crate) struct VertexDraft {
    pub(crate) id: u64,
    pub(crate) coin: String,
    pub(crate) degree: usize,
    pub(crate) column: Option<usize>,
    pub(crate) wire: Option<String>,
}

/// Mutable graph under construction. Vertex ids default to insertion index.
#[derive(Debug, Clone, Default)]
pub struct GraphBuilder {
    pub(crate) vertices: Vec<VertexDraft>,
    pub(crate) edges: Vec<(SlotRef, SlotRef)>,
    pub(crate) stubs: BTreeSet<SlotRef>,
    pub(crate) coins: BTreeMap<String, CoinSpec>,
    conflict: Option<String>,
}

impl GraphBuilder {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn num_vertices(&self) -> usize {
        self.vertices.len()
    }

    /// Binds a coin to its label. Rebinding a label to a different coin fails.
    pub fn register_coin(&mut self, coin: &CoinSpec) -> Result<(), GraphError> {
        match self.coins.get(coin.label()) {
            Some(existing) if existing != coin => {
                Err(GraphError::CoinConflict(coin.label().to_string()))
            }
            Some(_) => Ok(()),
            None => {
                self.coins.insert(coin.label().to_string(), coin.clone());
                Ok(())
            }
        }
    }

    /// Adds a vertex carrying `coin`, with as many slots as the coin's degree.
    pub fn add_vertex(&mut self, coin: &CoinSpec) -> usize {
        if self.register_coin(coin).is_err() && self.conflict.is_none() {
            self.conflict = Some(coin.label().to_string());
        }
        self.push_vertex(None, coin.label().to_string(), coin.degree())
    }

    /// Adds a vertex by coin label; the label is resolved at [`build`](Self::build).
    pub fn add_labeled_vertex(&mut self, id: Option<u64>, coin: &str, degree: usize) -> usize {
        self.push_vertex(id, coin.to_string(), degree)
    }

    fn push_vertex(&mut self, id: Option<u64>, coin: String, degree: usize) -> usize {
        let idx = self.vertices.len();
        self.vertices.push(VertexDraft {
            id: id.unwrap_or(idx as u64),
            coin,
            degree,
            column: None,
            wire: None,
        });
        idx
    }

    pub fn set_column(&mut self, v: usize, column: usize) -> &mut Self {
        self.vertices[v].column = Some(column);
        self
    }

    pub fn set_wire(&mut self, v: usize, wire: impl Into<String>) -> &mut Self {
        self.vertices[v].wire = Some(wire.into());
        self
    }

    pub fn connect(&mut self, a: SlotRef, b: SlotRef) -> &mut Self {
        self.edges.push((a, b));
        self
    }

    pub fn add_stub(&mut self, s: SlotRef) -> &mut Self {
        self.stubs.insert(s);
        self
    }

    pub fn remove_stub(&mut self, s: SlotRef) -> bool {
        self.stubs.remove(&s)
    }

    /// Makes every slot not already used by an edge a stub.
    pub fn stub_free_slots(&mut self) -> &mut Self {
        let used: BTreeSet<SlotRef> = self.edges.iter().flat_map(|&(a, b)| [a, b]).collect();
        for (v, d) in self.vertices.iter().enumerate() {
            for s in 0..d.degree {
                let r = SlotRef::new(v, s);
                if !used.contains(&r) {
                    self.stubs.insert(r);
                }
            }
        }
        self
    }

    pub fn build(self) -> Result<WalkGraph, GraphError> {
        if let Some(label) = self.conflict {
            return Err(GraphError::CoinConflict(label));
        }
        let mut id_index = HashMap::with_capacity(self.vertices.len());
        for (i, v) in self.vertices.iter().enumerate() {
            if id_index.insert(v.id, i).is_some() {
                return Err(GraphError::DuplicateVertexId(v.id));
            }
        }

        let mut coins: Vec<CoinSpec> = Vec::new();
        let mut coin_ids: HashMap<String, usize> = HashMap::new();
        let mut vertices = Vec::with_capacity(self.vertices.len());
        let mut offset = 0;
        for draft in &self.vertices {
            let coin_idx = match coin_ids.get(&draft.coin) {
                Some(&i) => i,
                None => {
                    let spec = match self.coins.get(&draft.coin) {
                        Some(c) => c.clone(),
                        None => resolve_label(&draft.coin).map_err(|e| match e {
                            CoinError::UnknownLabel(label) => GraphError::UnknownCoin {
                                vertex: draft.id,
                                label,
                            },
                            other => GraphError::Coin(other),
                        })?,
                    };
                    coins.push(spec);
                    coin_ids.insert(draft.coin.clone(), coins.len() - 1);
                    coins.len() - 1
                }
            };
            let coin_degree = coins[coin_idx].degree();
            if coin_degree != draft.degree {
                return Err(GraphError::CoinDegreeMismatch {
                    vertex: draft.id,
                    coin: draft.coin.clone(),
                    coin_degree,
                    slots: draft.degree,
                });
            }
            vertices.push(Vertex {
                id: draft.id,
                degree: draft.degree,
                column: draft.column,
                wire: draft.wire.clone(),
                coin: coin_idx,
                offset,
            });
            offset += draft.degree;
        }

        let total = offset;
        let mut slot_owner = Vec::with_capacity(total);
        for (i, v) in vertices.iter().enumerate() {
            slot_owner.extend(std::iter::repeat_n(i, v.degree));
        }

        let check = |s: SlotRef| -> Result<usize, GraphError> {
            let v = vertices
                .get(s.vertex)
                .ok_or(GraphError::UnknownVertex(s.vertex as u64))?;
            if s.slot >= v.degree {
                return Err(GraphError::SlotOutOfRange {
                    vertex: v.id,
                    slot: s.slot,
                    degree: v.degree,
                });
            }
            Ok(v.offset + s.slot)
        };

        let mut used = vec![false; total];
        let mut partner = vec![None; total];
        let mut claim = |g: usize, s: SlotRef| -> Result<(), GraphError> {
            if std::mem::replace(&mut used[g], true) {
                return Err(GraphError::SlotReused {
                    vertex: vertices[s.vertex].id,
                    slot: s.slot,
                });
            }
            Ok(())
        };
        for &(a, b) in &self.edges {
            let (ga, gb) = (check(a)?, check(b)?);
            if ga == gb {
                return Err(GraphError::DegenerateEdge {
                    vertex: vertices[a.vertex].id,
                    slot: a.slot,
                });
            }
            claim(ga, a)?;
            claim(gb, b)?;
            partner[ga] = Some(gb);
            partner[gb] = Some(ga);
        }
        for &s in &self.stubs {
            let g = check(s)?;
            claim(g, s)?;
        }
        if let Some(g) = used.iter().position(|u| !u) {
            let v = slot_owner[g];
            return Err(GraphError::DanglingSlot {
                vertex: vertices[v].id,
                slot: g - vertices[v].offset,
            });
        }

        let coin_matrices = coins.iter().map(CoinSpec::effective_matrix).collect();
        Ok(WalkGraph {
            vertices,
            coins,
            coin_matrices,
            edges: self.edges,
            stubs: self.stubs.into_iter().collect(),
            partner,
            slot_owner,
            id_index,
        })
    }
}

/// Cycle of `n` vertices, each with slot 0 toward `k − 1` and slot 1 toward `k + 1`.
///
/// `n = 2` gives two parallel edges and `n = 1` a self-loop.
pub fn cycle_graph(n: usize, coin: &CoinSpec) -> Result<WalkGraph, GraphError> {
    let mut b = GraphBuilder::new();
    for k in 0..n {
        let v = b.add_vertex(coin);
        b.set_column(v, k);
    }
    for k in 0..n {
        b.connect(SlotRef::new(k, 1), SlotRef::new((k + 1) % n, 0));
    }
    b.build()
}
