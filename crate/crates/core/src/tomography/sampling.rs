use std::collections::BTreeMap;

use rand::Rng;

use super::counts::{index_to_bits, CountTable, OutcomeTable};
use super::expectations::{ExpectationSet, PairValues};
use super::label::{MeasurementSetting, PauliLabel};
use super::plan::TomographyPlan;
use crate::error::{Error, Result};
use crate::noise::{apply_readout_noise, NoiseModel};
use crate::pauli::Pauli;
use crate::seed::{derive_seed, rng};
use crate::sim::{kernels, PureState};

/// Default shots per measurement setting.
pub const DEFAULT_SHOTS: u64 = 8192;

/// A state whose outcome distribution can be computed in any product Pauli basis.
pub trait MeasurableState: Sync {
    fn qubit_count(&self) -> usize;
    /// Probabilities of every outcome, indexed like basis states.
    fn basis_probabilities(&self, setting: &MeasurementSetting) -> Result<Vec<f64>>;
}

impl MeasurableState for PureState {
    fn qubit_count(&self) -> usize {
        PureState::qubit_count(self)
    }

    fn basis_probabilities(&self, setting: &MeasurementSetting) -> Result<Vec<f64>> {
        if setting.len() != self.qubit_count() {
            return Err(Error::DimensionMismatch {
                expected: self.qubit_count(),
                found: setting.len(),
            });
        }
        let mut rotated = self.clone();
        for (q, &b) in setting.bases().iter().enumerate() {
            if b != Pauli::Z {
                rotated.apply_unitary(q, &kernels::basis_change(b));
            }
        }
        Ok(rotated.probabilities())
    }
}

/// Draws `shots` outcomes of `setting`; readout error from `noise` is applied
/// shot by shot afterwards. Deterministic in `seed`.
pub fn sample_counts(
    state: &dyn MeasurableState,
    setting: &MeasurementSetting,
    shots: u64,
    noise: Option<&NoiseModel>,
    seed: u64,
) -> Result<CountTable> {
    if shots == 0 {
        return Err(Error::invalid("shots must be >= 1"));
    }
    let n = state.qubit_count();
    let probs = state.basis_probabilities(setting)?;
    let mut cumulative = Vec::with_capacity(probs.len());
    let mut acc = 0.0;
    for p in &probs {
        acc += p.max(0.0);
        cumulative.push(acc);
    }
    let mut r = rng(seed);
    let mut hist: BTreeMap<usize, u64> = BTreeMap::new();
    for _ in 0..shots {
        let u = r.gen::<f64>() * acc;
        let idx = cumulative.partition_point(|&c| c <= u).min(probs.len() - 1);
        *hist.entry(idx).or_default() += 1;
    }
    let counts = hist
        .into_iter()
        .map(|(i, c)| (index_to_bits(i, n), c))
        .collect();
    let table = CountTable::new(setting.clone(), shots, counts, Some(seed))?;
    match noise {
        Some(model) => apply_readout_noise(&table, model, derive_seed(seed, 0x5EAD)),
        None => Ok(table),
    }
}

/// Samples every setting of `plan`, each with its own derived seed.
pub fn sample_plan(
    state: &dyn MeasurableState,
    plan: &TomographyPlan,
    shots: u64,
    noise: Option<&NoiseModel>,
    seed: u64,
) -> Result<Vec<CountTable>> {
    plan.settings
        .iter()
        .enumerate()
        .map(|(k, s)| sample_counts(state, s, shots, noise, derive_seed(seed, k as u64)))
        .collect()
}

fn parity_estimate<T: OutcomeTable + ?Sized>(table: &T, qubits: &[usize]) -> f64 {
    let mut acc = 0.0;
    table.for_each_outcome(&mut |bits, w| {
        let b = bits.as_bytes();
        let odd = qubits.iter().filter(|&&q| b[q] == b'1').count() % 2 == 1;
        acc += if odd { -w } else { w };
    });
    acc
}

/// Pools every table exposing a label into a weight-averaged estimate.
pub fn expectations_from_counts<T: OutcomeTable>(
    tables: &[T],
    plan: &TomographyPlan,
) -> Result<ExpectationSet> {
    let n = plan.qubit_count;
    for t in tables {
        if t.setting().len() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                found: t.setting().len(),
            });
        }
    }
    let estimate = |label: &PauliLabel| -> Result<f64> {
        let qubits: Vec<usize> = label.terms().iter().map(|t| t.0).collect();
        let (mut sum, mut weight) = (0.0, 0.0);
        for t in tables.iter().filter(|t| t.setting().exposes(label)) {
            sum += parity_estimate(t, &qubits);
            weight += t.total_weight();
        }
        if weight <= 0.0 {
            return Err(Error::MissingExpectation(label.to_string()));
        }
        Ok((sum / weight).clamp(-1.0, 1.0))
    };

    let mut singles = vec![[0.0; 3]; n];
    for (q, s) in singles.iter_mut().enumerate() {
        for (k, p) in Pauli::NON_IDENTITY.iter().enumerate() {
            s[k] = estimate(&PauliLabel::single(q, *p)?)?;
        }
    }
    let mut pairs = BTreeMap::new();
    for &(p, q) in &plan.pairs {
        let mut vals: PairValues = [[None; 3]; 3];
        for &(a, b) in plan.mode.pair_labels() {
            let v = estimate(&PauliLabel::pair(p, a, q, b)?)?;
            vals[a.xyz_index().unwrap()][b.xyz_index().unwrap()] = Some(v);
        }
        pairs.insert((p, q), vals);
    }
    let shots = tables.iter().map(|t| t.total_weight().round() as u64).min();
    ExpectationSet::new(n, plan.mode, singles, pairs, shots)
}
