use std::collections::BTreeMap;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use super::sweep::{Kind, SWEEP_HEADER};
use crate::error::{Error, Result};

/// Summary table: median `lambda_G` per register size and row kind.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub inputs: Vec<PathBuf>,
    pub rows: Vec<ReportRow>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ReportRow {
    pub n: usize,
    pub sim: Option<f64>,
    pub mit: Option<f64>,
    pub exp: Option<f64>,
    /// Median dispersion `sum(lambda > 1)` of the noisy rows, if any.
    pub exp_sum_above_one: Option<f64>,
    /// Runs pooled into each median.
    pub runs: BTreeMap<Kind, usize>,
}

pub fn median(values: &mut [f64]) -> Option<f64> {
    if values.is_empty() {
        return None;
    }
    values.sort_by(|a, b| a.total_cmp(b));
    let m = values.len() / 2;
    Some(if values.len() % 2 == 1 {
        values[m]
    } else {
        (values[m - 1] + values[m]) / 2.0
    })
}

#[derive(Default)]
struct Samples {
    lambda_g: BTreeMap<Kind, Vec<f64>>,
    exp_sum: Vec<f64>,
}

fn ingest(path: &Path, into: &mut BTreeMap<usize, Samples>) -> Result<()> {
    let text = std::fs::read_to_string(path)?;
    let mut lines = text.lines();
    if lines.next() != Some(SWEEP_HEADER) {
        return Err(Error::invalid(format!(
            "{} is not a sweep CSV",
            path.display()
        )));
    }
    for (k, line) in lines.enumerate().filter(|(_, l)| !l.trim().is_empty()) {
        let f: Vec<&str> = line.split(',').collect();
        let bad = || Error::invalid(format!("{}:{}: malformed row", path.display(), k + 2));
        if f.len() != 7 {
            return Err(bad());
        }
        let n: usize = f[0].parse().map_err(|_| bad())?;
        let kind: Kind = f[2].parse()?;
        let lambda_g: f64 = f[3].parse().map_err(|_| bad())?;
        let sum: f64 = f[5].parse().map_err(|_| bad())?;
        let s = into.entry(n).or_default();
        s.lambda_g.entry(kind).or_default().push(lambda_g);
        if kind == Kind::Exp {
            s.exp_sum.push(sum);
        }
    }
    Ok(())
}

/// Merges sweep CSVs (for example one per seed) into per-`N` medians.
pub fn build_report(inputs: &[PathBuf]) -> Result<Report> {
    if inputs.is_empty() {
        return Err(Error::invalid("report needs at least one input CSV"));
    }
    let mut samples = BTreeMap::new();
    for p in inputs {
        ingest(p, &mut samples)?;
    }
    let rows = samples
        .into_iter()
        .map(|(n, mut s)| {
            let mut col = |k: Kind| s.lambda_g.get_mut(&k).and_then(|v| median(v));
            let (sim, mit, exp) = (col(Kind::Sim), col(Kind::Mit), col(Kind::Exp));
            ReportRow {
                n,
                sim,
                mit,
                exp,
                exp_sum_above_one: median(&mut s.exp_sum),
                runs: s.lambda_g.iter().map(|(k, v)| (*k, v.len())).collect(),
            }
        })
        .collect();
    Ok(Report {
        inputs: inputs.to_vec(),
        rows,
    })
}
