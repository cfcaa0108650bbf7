use std::f64::consts::PI;

use proptest::prelude::*;
use qwalk::*;

fn scaled_identity(d: usize, s: Complex64) -> ComplexMatrix {
    ComplexMatrix::identity(d).scale(s)
}

proptest! {
    #[test]
    fn phased_grover_squares_to_phase(d in 1usize..=16, phi in -PI..PI) {
        let g = phased_grover_coin(d, phi).unwrap().effective_matrix();
        let want = scaled_identity(d, Complex64::from_polar(1.0, 2.0 * phi));
        prop_assert!(g.matmul(&g).max_abs_diff(&want) < 1e-14);
    }

    #[test]
    fn biased_coins_are_unitary(delta in 0.0f64..=1.0, theta in -PI..PI) {
        prop_assert!(check_unitary(&biased_coin(delta).unwrap(), 1e-12));
        prop_assert!(check_unitary(&phased_bias_coin(delta, theta).unwrap(), 1e-12));
    }

    #[test]
    fn labels_round_trip(d in 1usize..=16, phi in -3.0f64..3.0) {
        let coin = phased_grover_coin(d, phi).unwrap();
        prop_assert_eq!(resolve_label(coin.label()).unwrap(), coin);
    }
}

#[test]
fn grover_is_real_symmetric_involution() {
    for d in 1..=16 {
        let g = grover_coin(d).unwrap().effective_matrix();
        for i in 0..d {
            for j in 0..d {
                assert_eq!(g[(i, j)].im, 0.0);
                assert_eq!(g[(i, j)], g[(j, i)]);
            }
        }
        assert!(g.matmul(&g).max_abs_diff(&ComplexMatrix::identity(d)) < 1e-15);
    }
}

#[test]
fn grover_two_is_the_swap() {
    let g = grover_coin(2).unwrap().effective_matrix();
    assert_eq!(g, pauli_x_coin().effective_matrix());
}

#[test]
fn wire_coin_entry() {
    let g = phased_grover_coin(4, -PI / 4.0).unwrap().effective_matrix();
    let want = Complex64::from_polar(0.5, -PI / 4.0);
    assert!((g[(0, 1)] - want).norm() < 1e-16);
    assert_eq!(phased_grover_coin(4, 0.0).unwrap(), grover_coin(4).unwrap());
}

#[test]
fn half_bias_is_hadamard() {
    assert_eq!(
        biased_coin(0.5).unwrap().effective_matrix(),
        hadamard_coin().effective_matrix()
    );
    assert_eq!(
        biased_coin(0.0).unwrap().effective_matrix(),
        pauli_x_coin().effective_matrix()
    );
    assert!(biased_coin(1.5).is_err());
}

#[test]
fn g8_printed_and_tensor_agree() {
    let printed = g8_coin();
    let m = printed.effective_matrix();
    assert_eq!(m[(0, 4)], Complex64::new(0.5, 0.0));
    assert_eq!(m[(0, 5)], Complex64::new(0.0, 0.5));
    assert_eq!(m[(0, 6)], Complex64::new(0.0, 0.5));
    assert_eq!(m[(0, 7)], Complex64::new(-0.5, 0.0));
    for i in 0..4 {
        for j in 0..4 {
            assert_eq!(m[(i, j)], ZERO);
            assert_eq!(m[(i + 4, j + 4)], ZERO);
        }
    }
    assert!(m.unitarity_defect() < 1e-15);
    let tensor = g8_from_tensor().unwrap();
    assert!(tensor.effective_matrix().unitarity_defect() < 1e-15);
    assert!(tensor.effective_matrix().max_abs_diff(&m) < 1e-15);
}

#[test]
fn check_unitary_rejects_perturbation() {
    assert!(check_unitary(&grover_coin(4).unwrap(), 1e-12));
    assert!(check_unitary(&g8_coin(), 1e-12));
    let mut m = grover_coin(4).unwrap().effective_matrix();
    m[(0, 0)] += 1e-3;
    assert!(matches!(
        CoinSpec::custom("bent", m, 0.0),
        Err(CoinError::NotUnitary { .. })
    ));
}
