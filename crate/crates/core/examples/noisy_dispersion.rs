//! Depolarizing gate noise along the GHZ CNOT chain: lambda_G saturates
//! while the weight above one keeps spreading over more eigenvalues.

use exciton_core::harness::{run_sweep, Backend, SweepConfig};
use exciton_core::noise::NoiseModel;

fn main() -> exciton_core::Result<()> {
    let noise = NoiseModel::symmetric_readout(0.02).with_depolarizing(0.002, 0.2);
    let cfg = SweepConfig {
        ns: vec![3, 5, 8, 12, 16, 22, 28, 34, 39, 47, 53],
        backend: Backend::Analytic,
        noise: Some(noise),
        ..SweepConfig::default()
    };
    println!(
        "{:>3}  {:>8}  {:>10}  {:>5}",
        "N", "lambda_G", "sum(l>1)", "#l>1"
    );
    for row in run_sweep(&cfg)? {
        let r = &row.report;
        println!(
            "{:>3}  {:>8.4}  {:>10.4}  {:>5}",
            r.n, r.lambda_g, r.sum_above_one, r.count_above_one
        );
    }
    Ok(())
}
