//! Wire, C-NOT, phase and Hadamard structures as ported walk-graph fragments.
//!
//! All fragments are built from double-rail wires. A degree-four wire vertex
//! orders its slots `[in_a, in_b, out_a, out_b]` and carries the phased
//! Grover coin `e^{-iπ/4} G^(4)`. A fragment of depth `D` is laid out in
//! columns `0..=D`: input ports are the incoming rails (stubs) of the
//! column-0 vertices, output ports are the incoming rails of the column-`D`
//! vertices, whose outgoing slots are stubs. Gluing two fragments merges the
//! output vertex of one with the input vertex of the next.

use num_complex::Complex64;
use thiserror::Error;

use crate::coin::{g8_coin, grover_coin, phased_grover_coin, wire_coin, CoinSpec, WIRE_PHASE};
use crate::graph::{GraphBuilder, GraphError, SlotRef};
use crate::ports::{Port, PortedGraph};

pub(crate) const IN_A: usize = 0;
pub(crate) const IN_B: usize = 1;
pub(crate) const OUT_A: usize = 2;
pub(crate) const OUT_B: usize = 3;

/// Column of the phase gadget at which the `|1⟩` wire detours through
/// degree-two vertices.
pub const PHASE_DETOUR_COLUMN: usize = 2;

/// Depth of the phase gadget: one column longer than the four phased
/// vertices on its `|1⟩` path.
pub const PHASE_DEPTH: usize = 5;

pub const CNOT_DEPTH: usize = 2;

pub const MIXER_DEPTH: usize = 2;

pub const HADAMARD_DEPTH: usize = 4 * PHASE_DEPTH + MIXER_DEPTH;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum GadgetError {
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error("port mismatch: {0}")]
    PortMismatch(String),
}

/// A ported fragment implementing one logical operation.
#[derive(Debug, Clone)]
pub struct Gadget {
    pub name: String,
    pub body: PortedGraph,
    /// Phase picked up per column by a plain wire, `e^{-iπ/4}`.
    pub phase_per_column: Complex64,
}

impl Gadget {
    fn new(name: impl Into<String>, body: PortedGraph) -> Self {
        Self {
            name: name.into(),
            body,
            phase_per_column: Complex64::from_polar(1.0, WIRE_PHASE),
        }
    }

    pub fn depth(&self) -> usize {
        self.body.depth
    }
}

/// The declared transit depth in steps.
pub fn gadget_depth(g: &Gadget) -> usize {
    g.depth()
}

fn wire_vertex(b: &mut GraphBuilder, coin: &CoinSpec, column: usize, wire: &str) -> usize {
    let v = b.add_vertex(coin);
    b.set_column(v, column).set_wire(v, wire);
    v
}

fn link(b: &mut GraphBuilder, from: usize, to: usize) {
    b.connect(SlotRef::new(from, OUT_A), SlotRef::new(to, IN_A));
    b.connect(SlotRef::new(from, OUT_B), SlotRef::new(to, IN_B));
}

fn in_port(label: &str, v: usize) -> Port {
    Port::new(label, SlotRef::new(v, IN_A), SlotRef::new(v, IN_B))
}

/// Stubs the incoming rails of the inputs and the outgoing rails of the outputs.
fn finish(
    name: &str,
    mut b: GraphBuilder,
    inputs: Vec<(&str, usize)>,
    outputs: Vec<(&str, usize)>,
    depth: usize,
) -> Gadget {
    for &(_, v) in &inputs {
        b.add_stub(SlotRef::new(v, IN_A))
            .add_stub(SlotRef::new(v, IN_B));
    }
    for &(_, v) in &outputs {
        b.add_stub(SlotRef::new(v, OUT_A))
            .add_stub(SlotRef::new(v, OUT_B));
    }
    let graph = b.build().expect("gadget layout is well formed");
    Gadget::new(
        name,
        PortedGraph {
            graph,
            inputs: inputs.into_iter().map(|(l, v)| in_port(l, v)).collect(),
            outputs: outputs.into_iter().map(|(l, v)| in_port(l, v)).collect(),
            depth,
        },
    )
}

/// Parallel plain wires, one per label, `length` segments long, with wire
/// vertices carrying `e^{iφ} G^(4)`.
pub fn plain_wires_with_phase(labels: &[&str], length: usize, phi: f64) -> Gadget {
    let coin = phased_grover_coin(4, phi).expect("degree 4 is valid");
    let mut b = GraphBuilder::new();
    let mut inputs = Vec::new();
    let mut outputs = Vec::new();
    for &label in labels {
        let mut prev = wire_vertex(&mut b, &coin, 0, label);
        inputs.push((label, prev));
        for col in 1..=length {
            let v = wire_vertex(&mut b, &coin, col, label);
            link(&mut b, prev, v);
            prev = v;
        }
        outputs.push((label, prev));
    }
    finish("wire", b, inputs, outputs, length)
}

pub fn plain_wires(labels: &[&str], length: usize) -> Gadget {
    plain_wires_with_phase(labels, length, WIRE_PHASE)
}

/// A single double-rail wire of `length` segments; depth `length`.
pub fn make_wire(length: usize) -> Gadget {
    assert!(length >= 1, "a wire needs at least one segment");
    plain_wires(&["0"], length)
}

/// [`make_wire`] with an arbitrary coin phase, for control runs.
pub fn make_wire_with_phase(length: usize, phi: f64) -> Gadget {
    assert!(length >= 1, "a wire needs at least one segment");
    plain_wires_with_phase(&["0"], length, phi)
}

/// C-NOT on wires labelled `ct` (control bit, target bit).
///
/// Control-0 lanes run straight; the two control-1 lanes cross between
/// columns 0 and 1 without sharing any vertex. Each output port is labelled
/// by the basis state it carries.
pub fn make_cnot() -> Gadget {
    let coin = wire_coin();
    let mut b = GraphBuilder::new();
    let labels = ["00", "01", "10", "11"];
    let starts: Vec<usize> = labels
        .iter()
        .map(|l| wire_vertex(&mut b, &coin, 0, l))
        .collect();
    // lane i after the crossing carries output label `labels[i]`
    let mut lanes: Vec<usize> = labels
        .iter()
        .map(|l| wire_vertex(&mut b, &coin, 1, l))
        .collect();
    let source = [0, 1, 3, 2];
    for (lane, &src) in source.iter().enumerate() {
        link(&mut b, starts[src], lanes[lane]);
    }
    for col in 2..=CNOT_DEPTH {
        for (lane, l) in labels.iter().enumerate() {
            let v = wire_vertex(&mut b, &coin, col, l);
            link(&mut b, lanes[lane], v);
            lanes[lane] = v;
        }
    }
    finish(
        "cnot",
        b,
        labels.iter().copied().zip(starts).collect(),
        labels.iter().copied().zip(lanes).collect(),
        CNOT_DEPTH,
    )
}

/// Phase gate: wire `1` gains `e^{iπ/4}` relative to wire `0`.
///
/// Wire `0` crosses five phased degree-four vertices. Wire `1` crosses four,
/// and at [`PHASE_DETOUR_COLUMN`] each of its rails passes through its own
/// unphased degree-two vertex instead, so both wires take five steps.
pub fn make_phase_gate() -> Gadget {
    let coin = wire_coin();
    let g2 = grover_coin(2).expect("degree 2 is valid");
    let mut b = GraphBuilder::new();

    let mut prev = wire_vertex(&mut b, &coin, 0, "0");
    let in0 = prev;
    for col in 1..=PHASE_DEPTH {
        let v = wire_vertex(&mut b, &coin, col, "0");
        link(&mut b, prev, v);
        prev = v;
    }
    let out0 = prev;

    let mut prev = wire_vertex(&mut b, &coin, 0, "1");
    let in1 = prev;
    let mut col = 1;
    while col <= PHASE_DEPTH {
        if col == PHASE_DETOUR_COLUMN {
            let top = b.add_vertex(&g2);
            let bottom = b.add_vertex(&g2);
            b.set_column(top, col).set_wire(top, "1");
            b.set_column(bottom, col).set_wire(bottom, "1");
            let next = wire_vertex(&mut b, &coin, col + 1, "1");
            b.connect(SlotRef::new(prev, OUT_A), SlotRef::new(top, 0));
            b.connect(SlotRef::new(top, 1), SlotRef::new(next, IN_A));
            b.connect(SlotRef::new(prev, OUT_B), SlotRef::new(bottom, 0));
            b.connect(SlotRef::new(bottom, 1), SlotRef::new(next, IN_B));
            prev = next;
            col += 2;
        } else {
            let v = wire_vertex(&mut b, &coin, col, "1");
            link(&mut b, prev, v);
            prev = v;
            col += 1;
        }
    }
    let out1 = prev;
    finish(
        "phase",
        b,
        vec![("0", in0), ("1", in1)],
        vec![("0", out0), ("1", out1)],
        PHASE_DEPTH,
    )
}

/// Central mixing section of the Hadamard structure.
///
/// Both wires feed one degree-eight vertex whose slots are ordered
/// `(|0⟩a, |0⟩b, |1⟩a, |1⟩b)` in, then the same four out. The vertex carries
/// the G8 coin with the same `e^{-iπ/4}` scalar phase as every other
/// non-phase-gate vertex.
pub fn make_mixer() -> Gadget {
    let coin = wire_coin();
    let g8 = g8_coin().with_phase("G8_phased", WIRE_PHASE);
    let mut b = GraphBuilder::new();
    let in0 = wire_vertex(&mut b, &coin, 0, "0");
    let in1 = wire_vertex(&mut b, &coin, 0, "1");
    let m = b.add_vertex(&g8);
    b.set_column(m, 1);
    let out0 = wire_vertex(&mut b, &coin, 2, "0");
    let out1 = wire_vertex(&mut b, &coin, 2, "1");
    for (k, (v, slot)) in [(in0, OUT_A), (in0, OUT_B), (in1, OUT_A), (in1, OUT_B)]
        .into_iter()
        .enumerate()
    {
        b.connect(SlotRef::new(v, slot), SlotRef::new(m, k));
    }
    for (k, (v, slot)) in [(out0, IN_A), (out0, IN_B), (out1, IN_A), (out1, IN_B)]
        .into_iter()
        .enumerate()
    {
        b.connect(SlotRef::new(m, 4 + k), SlotRef::new(v, slot));
    }
    finish(
        "mixer",
        b,
        vec![("0", in0), ("1", in1)],
        vec![("0", out0), ("1", out1)],
        MIXER_DEPTH,
    )
}

/// Hadamard: two phase gates (relative phase `i`), the mixer, two more phase gates.
pub fn make_hadamard_gate() -> Gadget {
    let p = make_phase_gate();
    let parts = [&p, &p, &make_mixer(), &p, &p];
    let mut g = parts[0].clone();
    for part in &parts[1..] {
        g = compose(&g, part).expect("hadamard sections share port labels");
    }
    g.name = "hadamard".into();
    g
}

/// Gadget by CLI name: `wire`, `cnot`, `phase`, `hadamard`, `mixer`.
pub fn by_name(name: &str, length: Option<usize>) -> Option<Gadget> {
    Some(match name {
        "wire" => make_wire(length.unwrap_or(4).max(1)),
        "cnot" => make_cnot(),
        "phase" => make_phase_gate(),
        "hadamard" => make_hadamard_gate(),
        "mixer" => make_mixer(),
        _ => return None,
    })
}

/// Glues `gadget` onto a graph under construction.
///
/// `attach[i]` is the builder vertex that input port `i` of the gadget is
/// merged into. That vertex must match the port vertex's coin and degree,
/// and every slot the gadget connects to must currently be a stub in `b`.
/// Gadget columns are shifted by `column_offset` and wire labels mapped by
/// `relabel`. Returns the output ports, re-addressed into `b`.
pub(crate) fn splice(
    b: &mut GraphBuilder,
    gadget: &PortedGraph,
    attach: &[usize],
    column_offset: usize,
    relabel: &dyn Fn(&str) -> String,
) -> Result<Vec<Port>, GadgetError> {
    let g = &gadget.graph;
    if attach.len() != gadget.inputs.len() {
        return Err(GadgetError::PortMismatch(format!(
            "{} attachment points for {} input ports",
            attach.len(),
            gadget.inputs.len()
        )));
    }
    let mut map: Vec<Option<usize>> = vec![None; g.num_vertices()];
    for (port, &target) in gadget.inputs.iter().zip(attach) {
        let gv = port.vertex();
        let draft = &b.vertices[target];
        if draft.degree != g.vertex(gv).degree || draft.coin != g.coin_of(gv).label() {
            return Err(GadgetError::PortMismatch(format!(
                "port `{}` vertex ({}, degree {}) cannot merge into vertex {} ({}, degree {})",
                port.label,
                g.coin_of(gv).label(),
                g.vertex(gv).degree,
                draft.id,
                draft.coin,
                draft.degree
            )));
        }
        if gadget.outputs.iter().any(|o| o.vertex() == gv) {
            return Err(GadgetError::PortMismatch(format!(
                "port `{}` is both an input and an output",
                port.label
            )));
        }
        map[gv] = Some(target);
    }
    let merged: Vec<bool> = map.iter().map(Option::is_some).collect();

    for (v, slot) in map.iter_mut().enumerate() {
        if slot.is_none() {
            let vertex = g.vertex(v);
            b.register_coin(g.coin_of(v))?;
            let idx = b.add_labeled_vertex(None, g.coin_of(v).label(), vertex.degree);
            if let Some(c) = vertex.column {
                b.set_column(idx, c + column_offset);
            }
            if let Some(w) = &vertex.wire {
                b.set_wire(idx, relabel(w));
            }
            *slot = Some(idx);
        }
    }
    let remap = |s: SlotRef| SlotRef::new(map[s.vertex].unwrap(), s.slot);

    for &(x, y) in g.edges() {
        for end in [x, y] {
            if merged[end.vertex] && !b.remove_stub(remap(end)) {
                return Err(GadgetError::PortMismatch(format!(
                    "slot {} of attachment vertex {} is already connected",
                    end.slot,
                    b.vertices[map[end.vertex].unwrap()].id
                )));
            }
        }
        b.connect(remap(x), remap(y));
    }
    for &s in g.stubs() {
        if !merged[s.vertex] {
            b.add_stub(remap(s));
        }
    }

    Ok(gadget
        .outputs
        .iter()
        .map(|p| Port {
            label: relabel(&p.label),
            rails: p.rails.map(remap),
        })
        .collect())
}

/// `second` after `first`, matching ports by label.
pub fn compose(first: &Gadget, second: &Gadget) -> Result<Gadget, GadgetError> {
    let mut b = first.body.graph.to_builder();
    let attach = second
        .body
        .inputs
        .iter()
        .map(|p| {
            first
                .body
                .output_index(&p.label)
                .map(|j| first.body.outputs[j].vertex())
                .ok_or_else(|| {
                    GadgetError::PortMismatch(format!("no output port `{}` to attach to", p.label))
                })
        })
        .collect::<Result<Vec<_>, _>>()?;
    if attach.len() != first.body.outputs.len() {
        return Err(GadgetError::PortMismatch(format!(
            "{} outputs feed {} inputs",
            first.body.outputs.len(),
            attach.len()
        )));
    }
    let outputs = splice(&mut b, &second.body, &attach, first.depth(), &|s| {
        s.to_string()
    })?;
    let graph = b.build()?;
    Ok(Gadget::new(
        format!("{}+{}", first.name, second.name),
        PortedGraph {
            graph,
            inputs: first.body.inputs.clone(),
            outputs,
            depth: first.depth() + second.depth(),
        },
    ))
}
