//! Largest particle-hole eigenvalue of GHZ states, exact and at scale.
//!
//! Small registers go through the state-vector simulator; large ones use the
//! closed-form GHZ marginals.

use exciton_core::rdm::signature_report;
use exciton_core::sim::{build_ghz, simulate, MarginalSet};
use exciton_core::tomography::{all_pairs, exact_expectations, plan_settings, PauliMode};

fn main() -> exciton_core::Result<()> {
    println!(
        "{:>3}  {:>8}  {:>8}  {:>8}",
        "N", "backend", "lambda_G", "lambda_D"
    );
    for n in [3, 4, 6, 8, 10, 12, 22, 39, 53] {
        let (backend, marginals) = if n <= 12 {
            ("dense", MarginalSet::from_pure(&simulate(&build_ghz(n)?)?))
        } else {
            ("analytic", MarginalSet::ghz(n)?)
        };
        let plan = plan_settings(n, &all_pairs(n), PauliMode::auto(n))?;
        let report = signature_report(&exact_expectations(&marginals, &plan)?)?;
        println!(
            "{n:>3}  {backend:>8}  {:>8.4}  {:>8.4}",
            report.lambda_g, report.lambda_d
        );
    }
    Ok(())
}
