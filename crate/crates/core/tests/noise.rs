mod common;

use std::collections::BTreeMap;

use exciton_core::mitigation::{
    apply_tensored, calibrate_tensored, MitigationFilter, NoisySampler,
};
use exciton_core::noise::{
    apply_gate_noise, apply_readout_noise, propagate_expectation, readout_distorted, DensityMatrix,
    NoiseModel, Readout, ReadoutError,
};
use exciton_core::pauli::Pauli;
use exciton_core::sim::{build_ghz, build_min3_prep, simulate, Circuit, MarginalSet, PrepAngles};
use exciton_core::tomography::{index_to_bits, CountTable, MeasurementSetting, PauliMode};
use exciton_core::Error;
use proptest::prelude::*;
use rand::Rng;

use common::*;

fn z_table(n: usize, counts: &[(&str, u64)]) -> CountTable {
    let map: BTreeMap<String, u64> = counts.iter().map(|(k, v)| (k.to_string(), *v)).collect();
    let shots = map.values().sum();
    CountTable::new(
        MeasurementSetting::uniform(n, Pauli::Z).unwrap(),
        shots,
        map,
        None,
    )
    .unwrap()
}

fn freq(t: &CountTable, key: &str) -> f64 {
    *t.counts.get(key).unwrap_or(&0) as f64 / t.shots as f64
}

/// Forward convolution of a distribution through explicit per-bit confusion.
fn convolve(p: &[f64], n: usize, errors: &[ReadoutError]) -> Vec<f64> {
    let mut out = vec![0.0; p.len()];
    for (truth, &pt) in p.iter().enumerate() {
        for (read, o) in out.iter_mut().enumerate() {
            let mut w = pt;
            for (q, e) in errors.iter().enumerate().take(n) {
                let shift = n - 1 - q;
                let (t, r) = ((truth >> shift) & 1, (read >> shift) & 1);
                w *= e.confusion()[r][t];
            }
            *o += w;
        }
    }
    out
}

fn kron(factors: &[[[f64; 2]; 2]]) -> Vec<Vec<f64>> {
    let mut m = vec![vec![1.0]];
    for f in factors {
        let d = m.len();
        let mut next = vec![vec![0.0; 2 * d]; 2 * d];
        for i in 0..d {
            for j in 0..d {
                for a in 0..2 {
                    for b in 0..2 {
                        next[2 * i + a][2 * j + b] = m[i][j] * f[a][b];
                    }
                }
            }
        }
        m = next;
    }
    m
}

fn simplex(v: &[f64], mass: f64) -> Vec<f64> {
    let mut u = v.to_vec();
    u.sort_by(|a, b| b.total_cmp(a));
    let mut cum = 0.0;
    let mut theta = 0.0;
    for (k, &x) in u.iter().enumerate() {
        cum += x;
        let t = (cum - mass) / (k + 1) as f64;
        if x - t > 0.0 {
            theta = t;
        }
    }
    v.iter().map(|&x| (x - theta).max(0.0)).collect()
}

/// Plain projected gradient on the explicit matrix.
fn dense_least_squares(a: &[Vec<f64>], c: &[f64]) -> Vec<f64> {
    let d = c.len();
    let col: f64 = (0..d)
        .map(|j| a.iter().map(|r| r[j].abs()).sum::<f64>())
        .fold(0.0, f64::max);
    let row: f64 = a
        .iter()
        .map(|r| r.iter().map(|x| x.abs()).sum::<f64>())
        .fold(0.0, f64::max);
    let step = 1.0 / (col * row);
    let mass: f64 = c.iter().sum();
    let mut x = vec![mass / d as f64; d];
    for _ in 0..500_000 {
        let r: Vec<f64> = (0..d)
            .map(|i| a[i].iter().zip(&x).map(|(m, v)| m * v).sum::<f64>() - c[i])
            .collect();
        let g: Vec<f64> = (0..d)
            .map(|j| (0..d).map(|i| a[i][j] * r[i]).sum())
            .collect();
        let next = simplex(
            &x.iter()
                .zip(&g)
                .map(|(v, gi)| v - step * gi)
                .collect::<Vec<_>>(),
            mass,
        );
        let change = next
            .iter()
            .zip(&x)
            .map(|(p, q)| (p - q).abs())
            .fold(0.0, f64::max);
        x = next;
        if change < 1e-15 {
            break;
        }
    }
    x
}

fn random_errors(n: usize, rng: &mut impl Rng) -> Vec<ReadoutError> {
    (0..n)
        .map(|_| ReadoutError {
            p01: rng.gen_range(0.0..0.1),
            p10: rng.gen_range(0.0..0.1),
        })
        .collect()
}

#[test]
fn readout_flip_examples() {
    let t = z_table(1, &[("0", 1000)]);
    let noisy = apply_readout_noise(&t, &NoiseModel::symmetric_readout(0.05), 3).unwrap();
    let ones = *noisy.counts.get("1").unwrap_or(&0) as f64;
    let sigma = (1000.0f64 * 0.05 * 0.95).sqrt();
    assert!((ones - 50.0).abs() < 3.0 * sigma, "{ones}");
    assert_eq!(noisy.shots, 1000);
    assert_eq!(
        noisy,
        apply_readout_noise(&t, &NoiseModel::symmetric_readout(0.05), 3).unwrap()
    );

    let clean = apply_readout_noise(&t, &NoiseModel::noiseless(), 3).unwrap();
    assert_eq!(clean, t);
}

#[test]
fn readout_on_ghz_matches_convolution() {
    let t = z_table(3, &[("000", 100_000), ("111", 100_000)]);
    let noisy = apply_readout_noise(&t, &NoiseModel::symmetric_readout(0.05), 17).unwrap();
    let mut truth = vec![0.0; 8];
    truth[0] = 0.5;
    truth[7] = 0.5;
    let predicted = convolve(&truth, 3, &[ReadoutError::symmetric(0.05); 3]);
    let outside_pred = 1.0 - predicted[0] - predicted[7];
    assert!((outside_pred - (1.0 - 0.95f64.powi(3) - 0.05f64.powi(3))).abs() < 1e-15);
    let outside = 1.0 - freq(&noisy, "000") - freq(&noisy, "111");
    let sigma = (outside_pred * (1.0 - outside_pred) / 200_000.0).sqrt();
    assert!((outside - outside_pred).abs() < 4.0 * sigma);
    for (i, p) in predicted.iter().enumerate() {
        let sigma = (p * (1.0 - p) / 200_000.0).sqrt();
        assert!((freq(&noisy, &index_to_bits(i, 3)) - p).abs() < 5.0 * sigma);
    }
}

#[test]
fn readout_dimension_mismatch() {
    let model = NoiseModel {
        readout: Readout::PerQubit(vec![[0.01, 0.02]; 2]),
        ..Default::default()
    };
    let err = apply_readout_noise(&z_table(3, &[("000", 10)]), &model, 0).unwrap_err();
    assert!(matches!(err, Error::DimensionMismatch { .. }), "{err}");
}

#[test]
fn distorted_expectations_match_convolution() {
    let mut rng = seeded(4);
    let s = random_complex_state(3, &mut rng);
    let errors = random_errors(3, &mut rng);
    let model = NoiseModel {
        readout: Readout::PerQubit(errors.iter().map(|e| [e.p01, e.p10]).collect()),
        ..Default::default()
    };
    let noisy = readout_distorted(&exact(&s, PauliMode::Full), &model).unwrap();
    let p = convolve(&s.probabilities(), 3, &errors);
    let sign = |i: usize, q: usize| if (i >> (2 - q)) & 1 == 1 { -1.0 } else { 1.0 };
    for q in 0..3 {
        let want: f64 = p.iter().enumerate().map(|(i, w)| w * sign(i, q)).sum();
        assert!((noisy.single(q, Pauli::Z).unwrap() - want).abs() < 1e-12);
        for r in q + 1..3 {
            let want: f64 = p
                .iter()
                .enumerate()
                .map(|(i, w)| w * sign(i, q) * sign(i, r))
                .sum();
            assert!((noisy.pair(q, Pauli::Z, r, Pauli::Z).unwrap() - want).abs() < 1e-12);
        }
    }
}

fn assert_marginals_close(a: &MarginalSet, b: &MarginalSet, tol: f64) {
    let n = a.qubit_count();
    for p in 0..n {
        for l in Pauli::NON_IDENTITY {
            assert!((a.single_expectation(p, l) - b.single_expectation(p, l)).abs() < tol);
        }
        for q in p + 1..n {
            for x in Pauli::NON_IDENTITY {
                for y in Pauli::NON_IDENTITY {
                    let (u, v) = (
                        a.pair_expectation(p, q, x, y).unwrap(),
                        b.pair_expectation(p, q, x, y).unwrap(),
                    );
                    assert!((u - v).abs() < tol, "{p}{q} {x:?}{y:?}: {u} vs {v}");
                }
            }
        }
    }
}

#[test]
fn zero_gate_noise_is_noiseless() {
    let c = build_min3_prep(PrepAngles::new(0.3, 1.1, 0.7)).unwrap();
    let clean = MarginalSet::from_pure(&simulate(&c).unwrap());
    let noisy = apply_gate_noise(&c, &NoiseModel::symmetric_readout(0.1)).unwrap();
    assert_marginals_close(&clean, &noisy, 1e-12);
}

#[test]
fn single_gate_depolarizing_scales_z() {
    let p = 0.07;
    let model = NoiseModel::noiseless().with_depolarizing(p, 0.0);
    for theta in [0.0, 0.4, 1.3, std::f64::consts::PI] {
        let mut c = Circuit::new(1).unwrap();
        c.ry(0, theta).unwrap();
        let rho = DensityMatrix::evolve(&c, &model).unwrap();
        let z = (rho.entry(0, 0) - rho.entry(1, 1)).re;
        assert!((z - (1.0 - p) * theta.cos()).abs() < 1e-12);
        assert!((rho.trace() - 1.0).abs() < 1e-12);
    }
    let mut x = Circuit::new(1).unwrap();
    x.x(0).unwrap();
    let z = propagate_expectation(&x, &model, &[(0, Pauli::Z)]).unwrap();
    assert!((z + (1.0 - p)).abs() < 1e-12);
}

#[test]
fn density_and_propagation_agree_on_ghz() {
    let model = NoiseModel::noiseless().with_depolarizing(0.01, 0.05);
    for n in 2..=8 {
        let c = build_ghz(n).unwrap();
        let dense = DensityMatrix::evolve(&c, &model).unwrap().marginals();
        let zz = |p: usize, q: usize| {
            propagate_expectation(&c, &model, &[(p, Pauli::Z), (q, Pauli::Z)]).unwrap()
        };
        for p in 0..n {
            for q in p + 1..n {
                assert!(
                    (dense.pair_expectation(p, q, Pauli::Z, Pauli::Z).unwrap() - zz(p, q)).abs()
                        < 1e-12
                );
            }
        }
        let pauli = exciton_core::noise::noisy_clifford_marginals(&c, &model).unwrap();
        assert_marginals_close(&dense, &pauli, 1e-12);
    }
}

#[test]
fn large_noisy_ghz_uses_propagation() {
    let model = NoiseModel::noiseless().with_depolarizing(0.0, 0.1);
    let m = apply_gate_noise(&build_ghz(20).unwrap(), &model).unwrap();
    // ZZ between qubits 0 and 1 crosses one CNOT on the chain.
    let zz = m.pair_expectation(0, 1, Pauli::Z, Pauli::Z).unwrap();
    assert!(zz < 1.0 && zz > 0.0);
    let mut c = Circuit::new(12).unwrap();
    c.ry(0, 0.3).unwrap();
    assert!(matches!(
        apply_gate_noise(&c, &model),
        Err(Error::Capacity(_))
    ));
}

#[test]
fn noise_model_files() {
    let m = NoiseModel::from_json(r#"{"readout": [[0.01, 0.02], [0.03, 0.04]], "depol2": 0.1}"#)
        .unwrap();
    assert_eq!(
        m.readout_for(1),
        ReadoutError {
            p01: 0.03,
            p10: 0.04
        }
    );
    assert!(m.check_qubits(3).is_err());
    assert!(NoiseModel::from_json(r#"{"readout": 1.5}"#).is_err());
    assert!(NoiseModel::from_json(r#"{"readout": 0.1, "bogus": 1}"#).is_err());
    assert!(NoiseModel::from_json(r#"{"depol1": -0.1}"#).is_err());
    assert!(NoiseModel::from_json("not json").is_err());
}

#[test]
fn calibration_examples() {
    let shots = 8192;
    let clean = calibrate_tensored(
        &NoisySampler::new(3, NoiseModel::noiseless()).unwrap(),
        shots,
        1,
    )
    .unwrap();
    let bound = 2.0 / (shots as f64).sqrt();
    for q in 0..3 {
        let e = clean.readout(q);
        assert!(e.p01 <= bound && e.p10 <= bound);
    }

    let sym = calibrate_tensored(
        &NoisySampler::new(3, NoiseModel::symmetric_readout(0.05)).unwrap(),
        shots,
        2,
    )
    .unwrap();
    for q in 0..3 {
        let e = sym.readout(q);
        assert!(
            (e.p01 - 0.05).abs() < 0.01 && (e.p10 - 0.05).abs() < 0.01,
            "{e:?}"
        );
    }
    assert_eq!(sym.calibration_shots, shots);

    let asym = NoiseModel {
        readout: Readout::PerQubit(vec![[0.02, 0.08]; 3]),
        ..Default::default()
    };
    let fit = calibrate_tensored(&NoisySampler::new(3, asym).unwrap(), shots, 3).unwrap();
    for q in 0..3 {
        let e = fit.readout(q);
        assert!(
            (e.p01 - 0.02).abs() < 0.01 && (e.p10 - 0.08).abs() < 0.01,
            "{e:?}"
        );
    }

    let err = calibrate_tensored(
        &NoisySampler::new(3, NoiseModel::noiseless()).unwrap(),
        99,
        0,
    )
    .unwrap_err();
    assert!(matches!(err, Error::InsufficientShots { shots: 99, .. }));
}

#[test]
fn filter_json_round_trip() {
    let f = calibrate_tensored(
        &NoisySampler::new(2, NoiseModel::symmetric_readout(0.03)).unwrap(),
        1000,
        5,
    )
    .unwrap();
    assert_eq!(
        MitigationFilter::from_json(&f.to_json().unwrap()).unwrap(),
        f
    );
    let bad =
        r#"{"matrices": [[[0.9, 0.1], [0.2, 0.9]]], "calibration_shots": 10, "residual": 0.0}"#;
    assert!(MitigationFilter::from_json(bad).is_err());
}

#[test]
fn identity_filter_leaves_counts() {
    let t = z_table(2, &[("00", 400), ("01", 100), ("11", 500)]);
    let m = MitigationFilter::identity(2).mitigate(&t).unwrap();
    for (k, &v) in &t.counts {
        assert!((m.weights[k] - v as f64).abs() < 1e-9);
    }
    assert!((m.weights.values().sum::<f64>() - 1000.0).abs() < 1e-9);
}

#[test]
fn exact_filter_inverts_convolution() {
    let mut rng = seeded(9);
    for n in 1..=5 {
        let errors = random_errors(n, &mut rng);
        let mut truth: Vec<f64> = (0..1 << n).map(|_| rng.gen::<f64>()).collect();
        let total: f64 = truth.iter().sum();
        truth.iter_mut().for_each(|p| *p /= total);
        let observed = convolve(&truth, n, &errors);
        let x = MitigationFilter::from_errors(&errors, 0, 0.0)
            .solve(&observed)
            .unwrap();
        for (a, b) in x.iter().zip(&truth) {
            assert!((a - b).abs() < 1e-6, "n={n}: {a} vs {b}");
        }
    }
}

#[test]
fn tensored_matches_explicit_kronecker() {
    let mut rng = seeded(10);
    for n in 1..=4 {
        for _ in 0..3 {
            let errors = random_errors(n, &mut rng);
            let filter = MitigationFilter::from_errors(&errors, 0, 0.0);
            let a = kron(&filter.matrices);

            let v: Vec<f64> = (0..1 << n).map(|_| rng.gen::<f64>()).collect();
            let mut fast = v.clone();
            apply_tensored(&mut fast, &filter.matrices);
            for (i, f) in fast.iter().enumerate() {
                let slow: f64 = a[i].iter().zip(&v).map(|(m, x)| m * x).sum();
                assert!((f - slow).abs() < 1e-12);
            }

            // sparse histograms push the optimum onto the simplex boundary
            let mut c: Vec<f64> = (0..1 << n)
                .map(|_| {
                    if rng.gen_bool(0.5) {
                        rng.gen::<f64>()
                    } else {
                        0.0
                    }
                })
                .collect();
            c[0] += 0.1;
            let mass: f64 = c.iter().sum();
            c.iter_mut().for_each(|x| *x /= mass);
            let ours = filter.solve(&c).unwrap();
            let dense = dense_least_squares(&a, &c);
            for (x, y) in ours.iter().zip(&dense) {
                assert!((x - y).abs() < 1e-8, "n={n}: {x} vs {y}");
            }
        }
    }
}

#[test]
fn mitigation_rejects_mismatched_filter() {
    let t = z_table(3, &[("000", 10)]);
    assert!(matches!(
        MitigationFilter::identity(2).mitigate(&t),
        Err(Error::DimensionMismatch { .. })
    ));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn mitigation_is_physical(n in 1usize..5, seed in any::<u64>()) {
        let mut rng = seeded(seed);
        let errors = random_errors(n, &mut rng);
        let mut counts = BTreeMap::new();
        for i in 0..1usize << n {
            if rng.gen_bool(0.6) {
                counts.insert(index_to_bits(i, n), rng.gen_range(1..500u64));
            }
        }
        prop_assume!(!counts.is_empty());
        let shots: u64 = counts.values().sum();
        let table = CountTable::new(MeasurementSetting::uniform(n, Pauli::Z).unwrap(), shots, counts, None).unwrap();
        let m = MitigationFilter::from_errors(&errors, 0, 0.0).mitigate(&table).unwrap();
        prop_assert!(m.weights.values().all(|&w| w >= 0.0));
        prop_assert!((m.weights.values().sum::<f64>() - shots as f64).abs() < 1e-9 * shots as f64);
    }
}
