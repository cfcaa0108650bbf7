mod common;

use std::f64::consts::FRAC_1_SQRT_2;

use common::{c, max_diff, random_graph, random_state};
use proptest::prelude::*;
use qwalk::io::graph_from_json;
use qwalk::*;
use rand::rngs::StdRng;
use rand::SeedableRng;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn step_preserves_norm(seed in any::<u64>(), steps in 1usize..20) {
        let (g, _) = random_graph(seed, 64);
        let mut rng = StdRng::seed_from_u64(seed ^ 0xabcd);
        let mut psi = random_state(&g, &mut rng);
        for _ in 0..steps {
            psi = g.step(&psi);
            prop_assert!((psi.norm_sqr() - 1.0).abs() < 1e-12);
        }
    }

    #[test]
    fn shift_is_an_involution(seed in any::<u64>()) {
        let (g, _) = random_graph(seed, 64);
        let mut rng = StdRng::seed_from_u64(seed ^ 1);
        let psi = random_state(&g, &mut rng);
        let back = g.apply_shift(&g.apply_shift(&psi));
        prop_assert_eq!(back, psi);
    }

    #[test]
    fn shift_matches_pairing(seed in any::<u64>()) {
        let (g, perm) = random_graph(seed, 64);
        let mut rng = StdRng::seed_from_u64(seed ^ 2);
        let psi = random_state(&g, &mut rng);
        let shifted = g.apply_shift(&psi);
        for (from, &to) in perm.iter().enumerate() {
            prop_assert_eq!(shifted.amplitudes()[to], psi.amplitudes()[from]);
        }
    }

    #[test]
    fn step_is_linear(seed in any::<u64>(), ar in -1.0f64..1.0, ai in -1.0f64..1.0, br in -1.0f64..1.0, bi in -1.0f64..1.0) {
        let (g, _) = random_graph(seed, 64);
        let mut rng = StdRng::seed_from_u64(seed ^ 3);
        let psi = random_state(&g, &mut rng);
        let phi = random_state(&g, &mut rng);
        let (a, b) = (c(ar, ai), c(br, bi));
        let mix: Vec<Complex64> = psi
            .amplitudes()
            .iter()
            .zip(phi.amplitudes())
            .map(|(x, y)| a * x + b * y)
            .collect();
        let lhs = g.step(&WalkState::from_amplitudes(mix));
        let rhs: Vec<Complex64> = g
            .step(&psi)
            .amplitudes()
            .iter()
            .zip(g.step(&phi).amplitudes())
            .map(|(x, y)| a * x + b * y)
            .collect();
        prop_assert!(max_diff(lhs.amplitudes(), &rhs) < 1e-12);
    }

    #[test]
    fn simulate_keeps_every_snapshot(seed in any::<u64>(), t in 0usize..12) {
        let (g, _) = random_graph(seed, 32);
        let mut rng = StdRng::seed_from_u64(seed ^ 4);
        let psi = random_state(&g, &mut rng);
        let tr = g.simulate(&psi, t).unwrap();
        prop_assert_eq!(tr.snapshots.len(), t + 1);
        prop_assert_eq!(tr.final_state(), &g.evolve(&psi, t));
    }
}

#[test]
fn grover_coin_forwards_and_reflects() {
    let g4 = grover_coin(4).unwrap();
    let mut b = GraphBuilder::new();
    b.add_vertex(&g4);
    b.stub_free_slots();
    let g = b.build().unwrap();

    let a = c(0.6, 0.8);
    let s = a * FRAC_1_SQRT_2;
    let out = g.apply_coin(&WalkState::from_amplitudes(vec![s, s, ZERO, ZERO]));
    assert!(max_diff(out.amplitudes(), &[ZERO, ZERO, s, s]) < 1e-15);

    let out = g.apply_coin(&WalkState::from_amplitudes(vec![a, ZERO, ZERO, ZERO]));
    assert!(max_diff(out.amplitudes(), &[-a / 2.0, a / 2.0, a / 2.0, a / 2.0]) < 1e-15);

    let zero = WalkState::zeros(&g);
    assert_eq!(g.apply_coin(&zero), zero);
}

#[test]
fn line_walk_first_step() {
    let tr = line_walk(1, [ONE, ZERO]).unwrap();
    let h = FRAC_1_SQRT_2;
    assert!((tr.amplitude(1, -1, 0) - c(h, 0.0)).norm() < 1e-15);
    assert!((tr.amplitude(1, 1, 1) - c(h, 0.0)).norm() < 1e-15);
    let probs: Vec<(i64, f64)> = tr
        .position_probabilities(1)
        .into_iter()
        .filter(|&(_, p)| p > 0.0)
        .collect();
    assert_eq!(probs.len(), 2);
    assert!(probs
        .iter()
        .all(|&(x, p)| x.abs() == 1 && (p - 0.5).abs() < 1e-15));
}

#[test]
fn line_walk_is_symmetric_from_balanced_coin() {
    let h = FRAC_1_SQRT_2;
    let tr = line_walk(30, [c(h, 0.0), c(0.0, h)]).unwrap();
    let probs = tr.position_probabilities(30);
    for &(x, p) in &probs {
        let mirror = probs.iter().find(|m| m.0 == -x).unwrap().1;
        assert!((p - mirror).abs() < 1e-12, "x = {x}");
    }
}

#[test]
fn four_cycle_hadamard_returns_at_eight() {
    let g = cycle_graph(4, &hadamard_coin()).unwrap();
    let psi0 = WalkState::localized(&g, 0, &[ONE, ZERO]).unwrap();
    let tr = g.simulate(&psi0, 8).unwrap();
    assert!((psi0.inner(tr.final_state()).norm_sqr() - 1.0).abs() < 1e-10);
    for t in 1..8 {
        assert!(
            psi0.inner(&tr.snapshots[t]).norm_sqr() < 1.0 - 1e-6,
            "t = {t}"
        );
    }
}

#[test]
fn sigma_x_cycle_moves_to_opposite_vertex() {
    for n in [4, 6, 8, 10] {
        let g = cycle_graph(n, &pauli_x_coin()).unwrap();
        let psi0 = WalkState::localized(&g, 0, &[ONE, ZERO]).unwrap();
        let probs = g.evolve(&psi0, n / 2).vertex_probabilities(&g);
        assert!((probs[n / 2] - 1.0).abs() < 1e-12, "n = {n}");
    }
}

#[test]
fn simulate_rejects_unnormalized_and_wrong_length() {
    let g = cycle_graph(3, &hadamard_coin()).unwrap();
    let bad = WalkState::from_amplitudes(vec![c(0.5, 0.0); 6]);
    assert!(matches!(
        g.simulate(&bad, 2),
        Err(StateError::NotNormalized { .. })
    ));
    let short = WalkState::from_amplitudes(vec![ONE]);
    assert!(matches!(
        g.simulate(&short, 2),
        Err(StateError::LengthMismatch { .. })
    ));
    // deviation within the input tolerance is accepted
    let mut amps = vec![ZERO; 6];
    amps[0] = c((1.0 + 1e-9f64).sqrt(), 0.0);
    assert!(g.simulate(&WalkState::from_amplitudes(amps), 1).is_ok());
}

#[test]
fn cycle_counts() {
    let g = cycle_graph(4, &hadamard_coin()).unwrap();
    assert_eq!(g.num_vertices(), 4);
    assert_eq!(g.edges().len(), 4);
    assert!(g.stubs().is_empty());
}

#[test]
fn graph_file_diagnostics_are_distinct() {
    let dangling = r#"{"vertices":[{"id":0,"coin":"HAD","slots":2}],"edges":[],"stubs":[[0,0]]}"#;
    let degree = r#"{"vertices":[{"id":0,"coin":"G2","slots":4}],"edges":[],
        "stubs":[[0,0],[0,1],[0,2],[0,3]]}"#;
    let unknown = r#"{"vertices":[{"id":0,"coin":"NOPE","slots":1}],"edges":[],"stubs":[[0,0]]}"#;
    let reused = r#"{"vertices":[{"id":0,"coin":"HAD","slots":2}],"edges":[[[0,0],[0,1]]],
        "stubs":[[0,0]]}"#;
    let err = |t: &str| match graph_from_json(t) {
        Err(qwalk::FormatError::Graph(e)) => e,
        other => panic!("expected a graph error, got {other:?}"),
    };
    assert!(matches!(
        err(dangling),
        GraphError::DanglingSlot { vertex: 0, slot: 1 }
    ));
    assert!(matches!(err(degree), GraphError::CoinDegreeMismatch { .. }));
    assert!(matches!(err(unknown), GraphError::UnknownCoin { .. }));
    assert!(matches!(err(reused), GraphError::SlotReused { .. }));
}
