//! Lowering circuits to synchronized walk graphs with one wire per basis state.
//!
//! Wire `w` of an `n`-qubit circuit carries the basis state whose bit string
//! is `w` written with `n` digits, qubit 1 being the most significant bit.
//! Each gate occupies one block of columns. A single-qubit gate on `q` is
//! instantiated once for every assignment of the other bits, on the wire
//! pair differing only in bit `q`; a C-NOT once for every assignment of the
//! bits other than control and target. Any wire a block leaves untouched is
//! padded with plain wire of the block's depth.

use serde::{Deserialize, Serialize};

use crate::circuit::{CircuitIR, Gate, GateKind};
use crate::coin::wire_coin;
use crate::gadget::{
    make_cnot, make_hadamard_gate, make_phase_gate, plain_wires, splice, Gadget, IN_A, IN_B, OUT_A,
    OUT_B,
};
use crate::graph::{GraphBuilder, SlotRef};
use crate::ports::{Port, PortedGraph};

/// `n`-digit bit string of wire `w`.
pub fn wire_label(w: usize, n: usize) -> String {
    format!("{w:0n$b}")
}

/// Bit mask selecting qubit `q` (1-based, qubit 1 most significant).
pub fn qubit_mask(q: usize, n: usize) -> usize {
    1 << (n - q)
}

/// Where one gate ended up in the compiled graph.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Placement {
    pub gate_index: usize,
    pub gate: String,
    pub kind: GateKind,
    pub qubits: Vec<usize>,
    pub instances: usize,
    /// Wire labels of each instance, in gadget port order.
    pub wire_groups: Vec<Vec<String>>,
    /// Wire pairs each instance acts across.
    pub linked_pairs: Vec<[String; 2]>,
    pub padded_wires: Vec<String>,
    pub column_start: usize,
    pub column_end: usize,
}

#[derive(Debug, Clone)]
pub struct CompiledGraph {
    pub circuit: CircuitIR,
    pub body: PortedGraph,
    pub placements: Vec<Placement>,
}

impl CompiledGraph {
    pub fn num_qubits(&self) -> usize {
        self.circuit.num_qubits()
    }

    pub fn depth(&self) -> usize {
        self.body.depth
    }
}

struct Templates {
    h: Gadget,
    p: Gadget,
    cnot: Gadget,
}

/// Wire groups (in gadget port order) and linked pairs for one gate.
fn instance_groups(gate: &Gate, n: usize) -> (Vec<Vec<usize>>, Vec<(usize, usize)>) {
    let size = 1usize << n;
    match *gate {
        Gate::H(q) | Gate::P(q) => {
            let m = qubit_mask(q, n);
            let groups: Vec<Vec<usize>> = (0..size)
                .filter(|w| w & m == 0)
                .map(|w| vec![w, w | m])
                .collect();
            let pairs = groups.iter().map(|g| (g[0], g[1])).collect();
            (groups, pairs)
        }
        Gate::Cnot { control, target } => {
            let (mc, mt) = (qubit_mask(control, n), qubit_mask(target, n));
            let groups: Vec<Vec<usize>> = (0..size)
                .filter(|w| w & (mc | mt) == 0)
                .map(|w| vec![w, w | mt, w | mc, w | mc | mt])
                .collect();
            let pairs = groups.iter().map(|g| (g[2], g[3])).collect();
            (groups, pairs)
        }
    }
}

/// Builds the walk graph for `circuit`.
pub fn lower(circuit: &CircuitIR) -> CompiledGraph {
    let n = circuit.num_qubits();
    let size = 1usize << n;
    let labels: Vec<String> = (0..size).map(|w| wire_label(w, n)).collect();
    let templates = Templates {
        h: make_hadamard_gate(),
        p: make_phase_gate(),
        cnot: make_cnot(),
    };
    let pad_template = |depth: usize| plain_wires(&["0"], depth);

    let coin = wire_coin();
    let mut b = GraphBuilder::new();
    let mut frontier: Vec<usize> = Vec::with_capacity(size);
    for label in &labels {
        let v = b.add_vertex(&coin);
        b.set_column(v, 0).set_wire(v, label.clone());
        for s in [IN_A, IN_B, OUT_A, OUT_B] {
            b.add_stub(SlotRef::new(v, s));
        }
        frontier.push(v);
    }
    let inputs: Vec<Port> = frontier
        .iter()
        .zip(&labels)
        .map(|(&v, l)| Port::new(l.clone(), SlotRef::new(v, IN_A), SlotRef::new(v, IN_B)))
        .collect();

    let index_of = |label: &str| usize::from_str_radix(label, 2).expect("wire labels are binary");
    let mut column = 0;
    let mut placements = Vec::with_capacity(circuit.gates().len());
    for (gate_index, gate) in circuit.gates().iter().enumerate() {
        let template = match gate.kind() {
            GateKind::H => &templates.h,
            GateKind::P => &templates.p,
            GateKind::Cnot => &templates.cnot,
        };
        let depth = template.depth();
        let (groups, pairs) = instance_groups(gate, n);
        let mut covered = vec![false; size];
        for group in &groups {
            let attach: Vec<usize> = group.iter().map(|&w| frontier[w]).collect();
            let port_labels: Vec<&str> = template.body.input_labels();
            let relabel = |local: &str| {
                let k = port_labels
                    .iter()
                    .position(|p| *p == local)
                    .expect("port label");
                labels[group[k]].clone()
            };
            let outs = splice(&mut b, &template.body, &attach, column, &relabel)
                .expect("gadget ports match wire vertices");
            for port in outs {
                frontier[index_of(&port.label)] = port.vertex();
            }
            for &w in group {
                covered[w] = true;
            }
        }
        let mut padded_wires = Vec::new();
        if covered.iter().any(|c| !c) {
            let pad = pad_template(depth);
            for w in (0..size).filter(|&w| !covered[w]) {
                let relabel = |_: &str| labels[w].clone();
                let outs = splice(&mut b, &pad.body, &[frontier[w]], column, &relabel)
                    .expect("padding ports match wire vertices");
                frontier[w] = outs[0].vertex();
                padded_wires.push(labels[w].clone());
            }
        }
        placements.push(Placement {
            gate_index,
            gate: gate.to_string(),
            kind: gate.kind(),
            qubits: gate.qubits(),
            instances: groups.len(),
            wire_groups: groups
                .iter()
                .map(|g| g.iter().map(|&w| labels[w].clone()).collect())
                .collect(),
            linked_pairs: pairs
                .iter()
                .map(|&(a, c)| [labels[a].clone(), labels[c].clone()])
                .collect(),
            padded_wires,
            column_start: column,
            column_end: column + depth,
        });
        column += depth;
    }

    let outputs: Vec<Port> = frontier
        .iter()
        .zip(&labels)
        .map(|(&v, l)| Port::new(l.clone(), SlotRef::new(v, IN_A), SlotRef::new(v, IN_B)))
        .collect();
    let graph = b.build().expect("compiled graph is well formed");
    CompiledGraph {
        circuit: circuit.clone(),
        body: PortedGraph {
            graph,
            inputs,
            outputs,
            depth: column,
        },
        placements,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::circuit::parse_circuit;

    #[test]
    fn labels_put_qubit_one_first() {
        assert_eq!(wire_label(2, 3), "010");
        assert_eq!(qubit_mask(1, 3), 0b100);
        assert_eq!(qubit_mask(3, 3), 0b001);
    }

    #[test]
    fn cnot_two_three_links_010_to_011() {
        let c = parse_circuit("qubits 3\ncnot 2 3").unwrap();
        let compiled = lower(&c);
        let pl = &compiled.placements[0];
        assert_eq!(pl.instances, 2);
        assert!(pl
            .linked_pairs
            .contains(&["010".to_string(), "011".to_string()]));
        assert!(pl.padded_wires.is_empty());
    }

    #[test]
    fn empty_circuit_has_depth_zero() {
        let c = parse_circuit("qubits 2").unwrap();
        let compiled = lower(&c);
        assert_eq!(compiled.depth(), 0);
        assert_eq!(compiled.body.inputs, compiled.body.outputs);
        assert_eq!(compiled.body.graph.num_vertices(), 4);
    }

    #[test]
    fn columns_are_contiguous() {
        let c = parse_circuit("qubits 2\nh 1\np 2\ncnot 1 2").unwrap();
        let compiled = lower(&c);
        let mut col = 0;
        for pl in &compiled.placements {
            assert_eq!(pl.column_start, col);
            col = pl.column_end;
        }
        assert_eq!(col, compiled.depth());
        let max_col = compiled
            .body
            .graph
            .vertices()
            .iter()
            .filter_map(|v| v.column)
            .max()
            .unwrap();
        assert_eq!(max_col, compiled.depth());
    }
}
