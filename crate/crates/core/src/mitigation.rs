//! Tensored readout calibration and constrained least-squares mitigation.
//!
//! Two calibration circuits (all qubits in `|0>`, all in `|1>`) give every
//! qubit's flip rates. Mitigation then finds the outcome distribution `x`
//! minimizing `||A x - c||` over the scaled probability simplex, where `A` is
//! the Kronecker product of the per-qubit confusion matrices. `A` is only
//! ever applied one qubit factor at a time.

use std::collections::BTreeMap;
use std::path::Path;

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::noise::{NoiseModel, ReadoutError};
use crate::seed::{derive_seed, rng};
use crate::tomography::{CountTable, FrequencyTable, MeasurementSetting, OutcomeTable};

/// Fewest calibration shots accepted.
pub const MIN_CALIBRATION_SHOTS: u64 = 100;
/// Largest register whose outcome vector is mitigated densely.
pub const MITIGATION_QUBIT_LIMIT: usize = 20;
pub const MAX_ITERATIONS: usize = 10_000;
pub const TOLERANCE: f64 = 1e-10;

/// Source of calibration counts: prepares `|0...0>` or `|1...1>` under the
/// active noise and measures in the computational basis.
pub trait CalibrationSampler {
    fn qubit_count(&self) -> usize;
    fn sample_calibration(&self, all_ones: bool, shots: u64, seed: u64) -> Result<CountTable>;
}

/// Calibration sampler for a [`NoiseModel`]. The prepared states are products,
/// so each qubit is sampled independently: the `X` gates of the all-ones
/// circuit are depolarized with `depol1`, then readout flips apply.
#[derive(Debug, Clone)]
pub struct NoisySampler {
    qubit_count: usize,
    model: NoiseModel,
}

impl NoisySampler {
    pub fn new(qubit_count: usize, model: NoiseModel) -> Result<Self> {
        model.validate()?;
        model.check_qubits(qubit_count)?;
        if qubit_count == 0 {
            return Err(Error::invalid("calibration needs at least one qubit"));
        }
        Ok(NoisySampler { qubit_count, model })
    }

    fn prob_one(&self, q: usize, all_ones: bool) -> f64 {
        let e = self.model.readout_for(q);
        let gate_flip = if all_ones {
            self.model.depol1 / 2.0
        } else {
            0.0
        };
        let p_true_one = if all_ones { 1.0 - gate_flip } else { 0.0 };
        p_true_one * (1.0 - e.p10) + (1.0 - p_true_one) * e.p01
    }
}

impl CalibrationSampler for NoisySampler {
    fn qubit_count(&self) -> usize {
        self.qubit_count
    }

    fn sample_calibration(&self, all_ones: bool, shots: u64, seed: u64) -> Result<CountTable> {
        let n = self.qubit_count;
        let probs: Vec<f64> = (0..n).map(|q| self.prob_one(q, all_ones)).collect();
        let mut r = rng(seed);
        let mut counts: BTreeMap<String, u64> = BTreeMap::new();
        for _ in 0..shots {
            let bits: String = probs
                .iter()
                .map(|&p| if r.gen::<f64>() < p { '1' } else { '0' })
                .collect();
            *counts.entry(bits).or_default() += 1;
        }
        CountTable::new(
            MeasurementSetting::uniform(n, crate::pauli::Pauli::Z)?,
            shots,
            counts,
            Some(seed),
        )
    }
}

/// Fitted tensored readout filter.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MitigationFilter {
    /// Per-qubit confusion matrices `A[measured][prepared]`.
    pub matrices: Vec<[[f64; 2]; 2]>,
    pub calibration_shots: u64,
    /// Largest total-variation distance between a calibration histogram and
    /// the product distribution the fitted matrices predict.
    pub residual: f64,
}

impl MitigationFilter {
    pub fn identity(n: usize) -> Self {
        Self::from_errors(&vec![ReadoutError::default(); n], 0, 0.0)
    }

    /// Filter holding the exact confusion of `model`.
    pub fn from_model(model: &NoiseModel, n: usize) -> Result<Self> {
        model.check_qubits(n)?;
        let errors: Vec<_> = (0..n).map(|q| model.readout_for(q)).collect();
        Ok(Self::from_errors(&errors, 0, 0.0))
    }

    pub fn from_errors(errors: &[ReadoutError], calibration_shots: u64, residual: f64) -> Self {
        MitigationFilter {
            matrices: errors.iter().map(|e| e.confusion()).collect(),
            calibration_shots,
            residual,
        }
    }

    pub fn qubit_count(&self) -> usize {
        self.matrices.len()
    }

    pub fn readout(&self, q: usize) -> ReadoutError {
        let m = &self.matrices[q];
        ReadoutError {
            p01: m[1][0],
            p10: m[0][1],
        }
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(self)?)
    }

    pub fn from_json(s: &str) -> Result<Self> {
        let f: MitigationFilter = serde_json::from_str(s)?;
        for (q, m) in f.matrices.iter().enumerate() {
            for col in 0..2 {
                let (a, b) = (m[0][col], m[1][col]);
                if !(0.0..=1.0).contains(&a)
                    || !(0.0..=1.0).contains(&b)
                    || (a + b - 1.0).abs() > 1e-9
                {
                    return Err(Error::invalid(format!(
                        "qubit {q} confusion column {col} is not stochastic"
                    )));
                }
            }
        }
        Ok(f)
    }

    pub fn load(path: &Path) -> Result<Self> {
        Self::from_json(&std::fs::read_to_string(path)?)
    }

    fn inverses(&self) -> Result<Vec<[[f64; 2]; 2]>> {
        self.matrices
            .iter()
            .enumerate()
            .map(|(q, m)| {
                let det = m[0][0] * m[1][1] - m[0][1] * m[1][0];
                if det.abs() < 1e-6 {
                    return Err(Error::invalid(format!(
                        "qubit {q} confusion matrix is singular"
                    )));
                }
                Ok([
                    [m[1][1] / det, -m[0][1] / det],
                    [-m[1][0] / det, m[0][0] / det],
                ])
            })
            .collect()
    }

    /// Constrained least-squares correction of one count table.
    pub fn mitigate(&self, counts: &CountTable) -> Result<FrequencyTable> {
        let n = counts.qubit_count();
        if n != self.qubit_count() {
            return Err(Error::DimensionMismatch {
                expected: self.qubit_count(),
                found: n,
            });
        }
        if n > MITIGATION_QUBIT_LIMIT {
            return Err(Error::Capacity(format!(
                "mitigating {n} qubits exceeds the dense limit of {MITIGATION_QUBIT_LIMIT}"
            )));
        }
        let mut c = vec![0.0; 1 << n];
        counts.for_each_outcome(&mut |bits, w| c[crate::tomography::bits_to_index(bits)] += w);
        let x = self.solve(&c)?;
        let weights = x
            .iter()
            .enumerate()
            .filter(|(_, &w)| w > 0.0)
            .map(|(i, &w)| (crate::tomography::index_to_bits(i, n), w))
            .collect();
        Ok(FrequencyTable {
            setting: counts.setting.clone(),
            shots: counts.shots,
            weights,
        })
    }

    /// Minimizes `||A x - c||` subject to `x >= 0`, `sum x = sum c` by
    /// accelerated projected gradient started from the projected inverse.
    pub fn solve(&self, c: &[f64]) -> Result<Vec<f64>> {
        let n = self.qubit_count();
        if c.len() != 1 << n {
            return Err(Error::DimensionMismatch {
                expected: 1 << n,
                found: c.len(),
            });
        }
        let mass: f64 = c.iter().sum();
        if mass <= 0.0 {
            return Err(Error::invalid("cannot mitigate an empty histogram"));
        }
        let inverses = self.inverses()?;
        let transposed: Vec<[[f64; 2]; 2]> = self
            .matrices
            .iter()
            .map(|m| [[m[0][0], m[1][0]], [m[0][1], m[1][1]]])
            .collect();
        let lipschitz: f64 = self.matrices.iter().map(|m| sigma_max_sq(m)).product();
        let step = 1.0 / lipschitz;

        let mut start = c.to_vec();
        apply_tensored(&mut start, &inverses);
        let mut x = project_simplex(&start, mass);
        let mut y = x.clone();
        let mut t = 1.0f64;
        let mut prev_obj = f64::INFINITY;
        for _ in 0..MAX_ITERATIONS {
            let mut r = y.clone();
            apply_tensored(&mut r, &self.matrices);
            for (ri, ci) in r.iter_mut().zip(c) {
                *ri -= ci;
            }
            apply_tensored(&mut r, &transposed);
            let trial: Vec<f64> = y.iter().zip(&r).map(|(yi, gi)| yi - step * gi).collect();
            let next = project_simplex(&trial, mass);

            let change = next
                .iter()
                .zip(&x)
                .map(|(a, b)| (a - b).abs())
                .fold(0.0, f64::max)
                / mass;
            let obj = objective(&next, c, &self.matrices);
            let t_next = if obj > prev_obj {
                1.0
            } else {
                (1.0 + (1.0 + 4.0 * t * t).sqrt()) / 2.0
            };
            let momentum = if obj > prev_obj {
                0.0
            } else {
                (t - 1.0) / t_next
            };
            y = next
                .iter()
                .zip(&x)
                .map(|(a, b)| a + momentum * (a - b))
                .collect();
            x = next;
            t = t_next;
            prev_obj = obj;
            if change < TOLERANCE {
                let total: f64 = x.iter().sum();
                return Ok(x.into_iter().map(|v| v * mass / total).collect());
            }
        }
        Err(Error::NoConvergence {
            iterations: MAX_ITERATIONS,
            what: "readout mitigation (ill-conditioned calibration?)".into(),
        })
    }
}

fn objective(x: &[f64], c: &[f64], factors: &[[[f64; 2]; 2]]) -> f64 {
    let mut ax = x.to_vec();
    apply_tensored(&mut ax, factors);
    ax.iter()
        .zip(c)
        .map(|(a, b)| (a - b) * (a - b))
        .sum::<f64>()
        / 2.0
}

fn sigma_max_sq(m: &[[f64; 2]; 2]) -> f64 {
    let (a, b, c, d) = (m[0][0], m[0][1], m[1][0], m[1][1]);
    let s = a * a + b * b + c * c + d * d;
    let det = a * d - b * c;
    (s + (s * s - 4.0 * det * det).max(0.0).sqrt()) / 2.0
}

/// `v <- (F_0 (x) F_1 (x) ... ) v`, qubit 0 on the most significant bit.
pub fn apply_tensored(v: &mut [f64], factors: &[[[f64; 2]; 2]]) {
    let n = factors.len();
    for (q, f) in factors.iter().enumerate() {
        let mask = 1usize << (n - 1 - q);
        for i0 in 0..v.len() {
            if i0 & mask != 0 {
                continue;
            }
            let i1 = i0 | mask;
            let (a, b) = (v[i0], v[i1]);
            v[i0] = f[0][0] * a + f[0][1] * b;
            v[i1] = f[1][0] * a + f[1][1] * b;
        }
    }
}

/// Euclidean projection onto `{x >= 0, sum x = mass}`.
pub fn project_simplex(v: &[f64], mass: f64) -> Vec<f64> {
    let mut u = v.to_vec();
    u.sort_by(|a, b| b.total_cmp(a));
    let mut cumulative = 0.0;
    let mut theta = 0.0;
    for (j, &uj) in u.iter().enumerate() {
        cumulative += uj;
        let candidate = (cumulative - mass) / (j + 1) as f64;
        if uj - candidate > 0.0 {
            theta = candidate;
        }
    }
    v.iter().map(|&x| (x - theta).max(0.0)).collect()
}

/// Fits per-qubit flip rates from the two calibration runs.
pub fn calibrate_tensored(
    sampler: &dyn CalibrationSampler,
    shots: u64,
    seed: u64,
) -> Result<MitigationFilter> {
    if shots < MIN_CALIBRATION_SHOTS {
        return Err(Error::InsufficientShots {
            shots,
            minimum: MIN_CALIBRATION_SHOTS,
        });
    }
    let n = sampler.qubit_count();
    let zeros = sampler.sample_calibration(false, shots, derive_seed(seed, 0))?;
    let ones = sampler.sample_calibration(true, shots, derive_seed(seed, 1))?;
    for t in [&zeros, &ones] {
        if t.qubit_count() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                found: t.qubit_count(),
            });
        }
    }
    let flip_rate = |table: &CountTable, flipped: u8| -> Vec<f64> {
        let mut hits = vec![0u64; n];
        for (bits, &c) in &table.counts {
            for (q, b) in bits.bytes().enumerate() {
                if b == flipped {
                    hits[q] += c;
                }
            }
        }
        hits.iter()
            .map(|&h| h as f64 / table.shots as f64)
            .collect()
    };
    let p01 = flip_rate(&zeros, b'1');
    let p10 = flip_rate(&ones, b'0');
    let errors: Vec<ReadoutError> = p01
        .iter()
        .zip(&p10)
        .map(|(&p01, &p10)| ReadoutError { p01, p10 })
        .collect();
    let residual = tvd_to_product(&zeros, &p01, false).max(tvd_to_product(&ones, &p10, true));
    Ok(MitigationFilter::from_errors(&errors, shots, residual))
}

/// Total-variation distance between a histogram and the product distribution
/// in which qubit `q` deviates from the prepared bit with probability `flip[q]`.
fn tvd_to_product(table: &CountTable, flip: &[f64], prepared_one: bool) -> f64 {
    let prepared = if prepared_one { b'1' } else { b'0' };
    let mut covered = 0.0;
    let mut distance = 0.0;
    for (bits, &c) in &table.counts {
        let p: f64 = bits
            .bytes()
            .zip(flip)
            .map(|(b, &f)| if b == prepared { 1.0 - f } else { f })
            .product();
        covered += p;
        distance += (c as f64 / table.shots as f64 - p).abs();
    }
    (distance + (1.0 - covered).max(0.0)) / 2.0
}
