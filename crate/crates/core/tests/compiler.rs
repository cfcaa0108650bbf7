mod common;

use std::collections::BTreeSet;
use std::f64::consts::{FRAC_1_SQRT_2, FRAC_PI_4};

use common::c;
use proptest::prelude::*;
use qwalk::compile::wire_label;
use qwalk::*;

const FIG_CIRCUIT: &str = "qubits 3\nh 3\ncnot 1 3\ncnot 2 3\np 3\n";

fn gate_strategy(n: usize) -> impl Strategy<Value = Gate> {
    let single = (0usize..2, 1..=n).prop_map(|(k, q)| if k == 0 { Gate::H(q) } else { Gate::P(q) });
    if n == 1 {
        single.boxed()
    } else {
        prop_oneof![
            single,
            (1..=n, 1..n).prop_map(move |(control, off)| Gate::Cnot {
                control,
                target: (control - 1 + off) % n + 1,
            }),
        ]
        .boxed()
    }
}

fn circuit_strategy(max_n: usize, max_gates: usize) -> impl Strategy<Value = CircuitIR> {
    (1..=max_n).prop_flat_map(move |n| {
        prop::collection::vec(gate_strategy(n), 0..=max_gates)
            .prop_map(move |gates| CircuitIR::new(n, gates).unwrap())
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn replication_counts(circuit in circuit_strategy(4, 6)) {
        let n = circuit.num_qubits();
        let compiled = lower(&circuit);
        prop_assert_eq!(compiled.body.width(), 1 << n);
        prop_assert_eq!(compiled.body.outputs.len(), 1 << n);
        for pl in &compiled.placements {
            let want = match pl.kind {
                GateKind::Cnot => 1 << (n - 2),
                _ => 1 << (n - 1),
            };
            prop_assert_eq!(pl.instances, want);
            let covered: BTreeSet<&String> = pl.wire_groups.iter().flatten().collect();
            prop_assert_eq!(covered.len() + pl.padded_wires.len(), 1 << n);
        }
    }

    #[test]
    fn degree_bound_and_coin_set(circuit in circuit_strategy(4, 6)) {
        let compiled = lower(&circuit);
        let g = &compiled.body.graph;
        prop_assert!(g.max_degree() <= 8);
        for coin in g.coins() {
            prop_assert!(["G4_phased", "G2", "G8_phased"].contains(&coin.label()), "{}", coin.label());
        }
    }

    #[test]
    fn compiled_circuits_match_oracle(circuit in circuit_strategy(3, 5)) {
        let report = verify_circuit(&circuit, 1e-9).unwrap();
        prop_assert!(report.leakage <= 1e-10);
    }

    /// With the per-step wire phase divided out, every gate is exact except
    /// the Hadamard's extra e^{3iπ/4}.
    #[test]
    fn bookkept_unitary_is_phase_exact(circuit in circuit_strategy(3, 5)) {
        let compiled = lower(&circuit);
        let eff = effective_unitary(&compiled.body).unwrap();
        let hs = circuit.gates().iter().filter(|g| g.kind() == GateKind::H).count();
        let want = circuit_oracle(&circuit)
            .scale(Complex64::from_polar(1.0, 3.0 * FRAC_PI_4 * hs as f64));
        prop_assert!(eff.bookkept().max_abs_diff(&want) < 1e-10);
    }

    #[test]
    fn all_paths_have_equal_length(circuit in circuit_strategy(3, 5)) {
        let compiled = lower(&circuit);
        for w in 0..compiled.body.width() {
            let s = compiled.body.basis_injection(w);
            let g = &compiled.body.graph;
            let early = compiled.body.measure(&g.evolve(&s, compiled.depth().saturating_sub(1)));
            let on_time = compiled.body.measure(&g.evolve(&s, compiled.depth()));
            prop_assert!(on_time.leakage <= 1e-10);
            if compiled.depth() > 0 {
                prop_assert!(early.leakage > 0.5);
            }
        }
    }
}

#[test]
fn fig_circuit_placements() {
    let circuit = parse_circuit(FIG_CIRCUIT).unwrap();
    let compiled = lower(&circuit);
    let counts: Vec<usize> = compiled.placements.iter().map(|p| p.instances).collect();
    assert_eq!(counts, [4, 2, 2, 4]);
    assert_eq!(compiled.depth(), 22 + 2 + 2 + 5);
    let cnot23 = &compiled.placements[2];
    assert_eq!(
        cnot23.linked_pairs,
        vec![
            ["010".to_string(), "011".to_string()],
            ["110".to_string(), "111".to_string()]
        ]
    );
    let p3 = &compiled.placements[3];
    assert!(p3
        .wire_groups
        .contains(&vec!["000".to_string(), "001".to_string()]));
}

#[test]
fn injection_splits_each_amplitude_over_both_rails() {
    let compiled = lower(&parse_circuit("qubits 1\nh 1").unwrap());
    let (a, b) = (c(0.6, 0.0), c(0.0, 0.8));
    let s = compiled.body.inject(&[a, b]).unwrap();
    let g = &compiled.body.graph;
    for (port, amp) in compiled.body.inputs.iter().zip([a, b]) {
        for rail in port.rails {
            let got = s.amplitudes()[g.slot_index(rail)];
            assert!((got - amp * FRAC_1_SQRT_2).norm() < 1e-15);
        }
    }
    assert!((s.norm_sqr() - 1.0).abs() < 1e-15);
    assert!(matches!(
        compiled.body.inject(&[a, a]),
        Err(PortError::NotNormalized { .. })
    ));
    assert!(matches!(
        compiled.body.inject(&[a]),
        Err(PortError::LengthMismatch { .. })
    ));
}

#[test]
fn depth_zero_round_trip_is_identity() {
    let compiled = lower(&parse_circuit("qubits 2").unwrap());
    let logical = [c(0.5, 0.0), c(0.0, 0.5), c(-0.5, 0.0), c(0.0, -0.5)];
    let r = compiled.body.run(&logical).unwrap();
    assert_eq!(r.raw.len(), 4);
    for (x, y) in r.raw.iter().zip(logical) {
        assert!((x - y).norm() < 1e-15);
    }
}

#[test]
fn early_readout_names_the_column() {
    let compiled = lower(&parse_circuit(FIG_CIRCUIT).unwrap());
    let s = compiled.body.basis_injection(0);
    let early = compiled.body.graph.evolve(&s, compiled.depth() - 3);
    match compiled.body.readout(&early) {
        Err(PortError::Synchronization {
            column, leakage, ..
        }) => {
            assert!(leakage > 0.99);
            assert_eq!(column, Some(compiled.depth() - 3));
        }
        other => panic!("expected a synchronization failure, got {other:?}"),
    }
}

#[test]
fn fig_circuit_output_is_normalized() {
    let compiled = lower(&parse_circuit(FIG_CIRCUIT).unwrap());
    let logical: Vec<Complex64> = (0..8).map(|_| c(1.0 / 8f64.sqrt(), 0.0)).collect();
    let r = compiled.body.run(&logical).unwrap();
    let p: f64 = r.raw.iter().map(|c| c.norm_sqr()).sum();
    assert!((p - 1.0).abs() < 1e-10);
}

#[test]
fn labels_follow_wire_index() {
    let compiled = lower(&parse_circuit("qubits 3").unwrap());
    for (w, port) in compiled.body.inputs.iter().enumerate() {
        assert_eq!(port.label, wire_label(w, 3));
    }
}
