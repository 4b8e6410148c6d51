use std::collections::BTreeMap;

use rand::Rng;

use super::model::NoiseModel;
use crate::error::Result;
use crate::seed::rng;
use crate::tomography::{CountTable, ExpectationSet};

/// Flips each recorded bit independently with the model's confusion probabilities.
pub fn apply_readout_noise(
    counts: &CountTable,
    model: &NoiseModel,
    seed: u64,
) -> Result<CountTable> {
    let n = counts.qubit_count();
    model.check_qubits(n)?;
    let errors: Vec<_> = (0..n).map(|q| model.readout_for(q)).collect();
    if errors.iter().all(|e| e.is_trivial()) {
        return Ok(counts.clone());
    }
    let mut r = rng(seed);
    let mut out: BTreeMap<String, u64> = BTreeMap::new();
    let mut buf = Vec::with_capacity(n);
    for (bits, &count) in &counts.counts {
        for _ in 0..count {
            buf.clear();
            for (b, e) in bits.bytes().zip(&errors) {
                let flip = if b == b'0' { e.p01 } else { e.p10 };
                let flipped = flip > 0.0 && r.gen::<f64>() < flip;
                buf.push(if flipped { b ^ 1 } else { b });
            }
            let key = String::from_utf8(buf.clone()).expect("ascii bits");
            *out.entry(key).or_default() += 1;
        }
    }
    CountTable::new(counts.setting.clone(), counts.shots, out, counts.seed)
}

/// Infinite-shot effect of readout error on Pauli expectations.
///
/// A read bit satisfies `E[(-1)^b'] = a (-1)^b + c` with `a = 1 - p01 - p10`
/// and `c = p10 - p01`; independence across qubits expands correlators over
/// subsets of the label's support.
pub fn readout_distorted(exp: &ExpectationSet, model: &NoiseModel) -> Result<ExpectationSet> {
    model.check_qubits(exp.qubit_count())?;
    let source = exp.clone();
    exp.map_values(|label, value| {
        let affine = |q: usize| {
            let e = model.readout_for(q);
            (1.0 - e.p01 - e.p10, e.p10 - e.p01)
        };
        match label.terms() {
            [(q, _)] => {
                let (a, c) = affine(*q);
                a * value + c
            }
            [(p, pa), (q, qb)] => {
                let (a1, c1) = affine(*p);
                let (a2, c2) = affine(*q);
                let sp = pa.xyz_index().map_or(1.0, |k| source.raw_single(*p)[k]);
                let sq = qb.xyz_index().map_or(1.0, |k| source.raw_single(*q)[k]);
                a1 * a2 * value + a1 * c2 * sp + c1 * a2 * sq + c1 * c2
            }
            _ => value,
        }
    })
}
