mod common;

use std::f64::consts::{FRAC_1_SQRT_2, FRAC_PI_2, FRAC_PI_4};

use exciton_core::sim::{
    build_ghz, build_min3_prep, ghz_marginals, simulate, Circuit, Gate, MarginalSet, PrepAngles,
    PureState, Simulator,
};
use exciton_core::Error;
use num_complex::Complex64;
use proptest::prelude::*;

use common::*;

/// Reduced state of qubits `p < q` traced out by explicit summation.
fn partial_trace(state: &PureState, p: usize, q: usize) -> [[Complex64; 4]; 4] {
    let n = state.qubit_count();
    let a = state.amplitudes();
    let bit = |i: usize, k: usize| (i >> (n - 1 - k)) & 1;
    let mut rho = [[c(0.0, 0.0); 4]; 4];
    for i in 0..a.len() {
        for j in 0..a.len() {
            let rest_equal = (0..n)
                .filter(|&k| k != p && k != q)
                .all(|k| bit(i, k) == bit(j, k));
            if rest_equal {
                rho[2 * bit(i, p) + bit(i, q)][2 * bit(j, p) + bit(j, q)] += a[i] * a[j].conj();
            }
        }
    }
    rho
}

#[test]
fn min3_identity_angles_leave_vacuum() {
    let s = simulate(&build_min3_prep(PrepAngles::new(0.0, 0.0, 0.0)).unwrap()).unwrap();
    assert_eq!(s.amplitudes()[0], c(1.0, 0.0));
    assert!(s.amplitudes()[1..].iter().all(|a| a.norm() == 0.0));
}

#[test]
fn min3_has_six_gates() {
    let circ = build_min3_prep(PrepAngles::new(0.1, 0.2, 0.3)).unwrap();
    assert_eq!(circ.gates().len(), 6);
    assert_eq!(circ.cnot_count(), 3);
}

#[test]
fn min3_first_rotation_alone() {
    // Ry(pi/2)|0> = (|0> + |1>)/sqrt2 on qubit 0, then CNOT 0 -> 2 copies it onto qubit 2.
    let s = simulate(&build_min3_prep(PrepAngles::new(FRAC_PI_2, 0.0, 0.0)).unwrap()).unwrap();
    for (idx, amp) in s.amplitudes().iter().enumerate() {
        let expected = match idx {
            0b000 => FRAC_PI_4.cos(),
            0b101 => FRAC_PI_4.sin(),
            _ => 0.0,
        };
        assert!((amp - c(expected, 0.0)).norm() < 1e-12, "index {idx:03b}");
    }
}

#[test]
fn min3_all_quarter_turns() {
    let s = simulate(&build_min3_prep(PrepAngles::new(FRAC_PI_2, FRAC_PI_2, FRAC_PI_2)).unwrap())
        .unwrap();
    assert!((s.norm_sqr() - 1.0).abs() < 1e-12);
    for idx in [0b001, 0b010, 0b100, 0b111] {
        assert!(s.amplitudes()[idx].norm() < 1e-12);
    }
}

#[test]
fn ghz_states() {
    let s = simulate(&build_ghz(3).unwrap()).unwrap();
    for (i, a) in s.amplitudes().iter().enumerate() {
        let e = if i == 0 || i == 7 { FRAC_1_SQRT_2 } else { 0.0 };
        assert!((a - c(e, 0.0)).norm() < 1e-12);
    }
    let s = simulate(&build_ghz(1).unwrap()).unwrap();
    assert!((s.amplitudes()[0] - c(FRAC_1_SQRT_2, 0.0)).norm() < 1e-12);
    assert!((s.amplitudes()[1] - c(FRAC_1_SQRT_2, 0.0)).norm() < 1e-12);
    assert!(build_ghz(0).is_err());
}

#[test]
fn ghz5_correlators() {
    use exciton_core::pauli::Pauli;
    let m = MarginalSet::from_pure(&simulate(&build_ghz(5).unwrap()).unwrap());
    assert!((m.pair_expectation(0, 2, Pauli::Z, Pauli::Z).unwrap() - 1.0).abs() < 1e-12);
    assert!(m.single_expectation(0, Pauli::Z).abs() < 1e-12);
}

#[test]
fn empty_circuit_is_vacuum() {
    let s = simulate(&Circuit::new(2).unwrap()).unwrap();
    assert_eq!(
        s.amplitudes(),
        &[c(1.0, 0.0), c(0.0, 0.0), c(0.0, 0.0), c(0.0, 0.0)]
    );
}

#[test]
fn dense_limit_is_a_capacity_error() {
    let err = simulate(&build_ghz(21).unwrap()).unwrap_err();
    assert!(matches!(err, Error::Capacity(ref m) if m.contains("analytic")));
    assert_eq!(err.exit_code(), 3);
    let small = Simulator { dense_limit: 4 };
    assert!(small.run(&build_ghz(5).unwrap()).is_err());
    assert!(small.run(&build_ghz(4).unwrap()).is_ok());
}

#[test]
fn ghz_marginal_examples() {
    let m = ghz_marginals(53, 7, 30).unwrap();
    for (i, row) in m.matrix.iter().enumerate() {
        for (j, v) in row.iter().enumerate() {
            let e = if i == j && (i == 0 || i == 3) {
                0.5
            } else {
                0.0
            };
            assert_eq!(*v, c(e, 0.0));
        }
    }
    let single = m.single(0);
    assert_eq!(single[0][0].re, 0.5);
    assert_eq!(single[1][1].re, 0.5);
    assert!(ghz_marginals(3, 1, 1).is_err());
    assert!(ghz_marginals(2, 0, 1).is_err());
}

#[test]
fn analytic_backend_matches_dense_partial_trace() {
    for n in 3..=12 {
        let s = simulate(&build_ghz(n).unwrap()).unwrap();
        for (p, q) in [(0, 1), (0, n - 1), (1, n / 2 + 1)] {
            let oracle = partial_trace(&s, p, q);
            let analytic = ghz_marginals(n, p, q).unwrap();
            for i in 0..4 {
                for j in 0..4 {
                    assert!(
                        (oracle[i][j] - analytic.matrix[i][j]).norm() < 1e-12,
                        "n={n} ({p},{q})"
                    );
                }
            }
        }
    }
}

#[test]
fn library_partial_trace_matches_oracle() {
    let mut rng = seeded(1);
    let s = random_complex_state(4, &mut rng);
    for (p, q) in [(0, 1), (0, 3), (1, 2), (2, 3)] {
        let lib = s.pair_marginal(p, q).unwrap();
        let oracle = partial_trace(&s, p, q);
        for i in 0..4 {
            for j in 0..4 {
                assert!((oracle[i][j] - lib.matrix[i][j]).norm() < 1e-12);
            }
        }
    }
}

fn angle() -> impl Strategy<Value = f64> {
    -10.0f64..10.0
}

proptest! {
    #[test]
    fn min3_support_reality_and_norm(t1 in angle(), t2 in angle(), t3 in angle()) {
        let s = simulate(&build_min3_prep(PrepAngles::new(t1, t2, t3)).unwrap()).unwrap();
        prop_assert!((s.norm_sqr() - 1.0).abs() < 1e-12);
        for idx in [0b001, 0b010, 0b100, 0b111] {
            prop_assert!(s.amplitudes()[idx].norm() < 1e-12);
        }
        prop_assert!(s.amplitudes().iter().all(|a| a.im.abs() < 1e-12));
    }

    #[test]
    fn gates_invert(seed in any::<u64>(), theta in angle(), which in 0usize..4) {
        let mut rng = seeded(seed);
        let s = random_complex_state(3, &mut rng);
        let gate = match which {
            0 => Gate::RotY { target: 1, angle: theta },
            1 => Gate::Hadamard { target: 2 },
            2 => Gate::Cnot { control: 2, target: 0 },
            _ => Gate::PauliX { target: 0 },
        };
        let mut t = s.clone();
        t.apply_gate(&gate).unwrap();
        t.apply_gate(&gate.inverse()).unwrap();
        for (a, b) in s.amplitudes().iter().zip(t.amplitudes()) {
            prop_assert!((a - b).norm() < 1e-12);
        }
    }

    #[test]
    fn random_circuits_preserve_norm(seed in any::<u64>(), len in 0usize..30) {
        use rand::Rng;
        let mut rng = seeded(seed);
        let n = 5;
        let mut circ = Circuit::new(n).unwrap();
        for _ in 0..len {
            let t = rng.gen_range(0..n);
            match rng.gen_range(0..4) {
                0 => { circ.ry(t, rng.gen_range(-3.0..3.0)).unwrap(); }
                1 => { circ.h(t).unwrap(); }
                2 => { circ.x(t).unwrap(); }
                _ => { circ.cx(t, (t + 1 + rng.gen_range(0..n - 1)) % n).unwrap(); }
            }
        }
        let s = simulate(&circ).unwrap();
        prop_assert!((s.norm_sqr() - 1.0).abs() < 1e-12);
        if !circ.gates().iter().any(|g| matches!(g, Gate::Hadamard { .. })) {
            prop_assert!(s.amplitudes().iter().all(|a| a.im.abs() < 1e-12));
        }
    }
}
