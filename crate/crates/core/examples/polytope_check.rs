//! Natural occupations of three-qubit states and the generalized Pauli
//! constraint `n5 + n6 - n4 >= 0`.

use std::f64::consts::FRAC_PI_2;

use exciton_core::polytope::{check_constraints, occupations};
use exciton_core::rdm::one_rdms;
use exciton_core::sim::{build_min3_prep, simulate, MarginalSet, PrepAngles};
use exciton_core::tomography::{all_pairs, exact_expectations, plan_settings, PauliMode};

fn main() -> exciton_core::Result<()> {
    let plan = plan_settings(3, &all_pairs(3), PauliMode::Full)?;
    let samples = [
        ("vacuum", PrepAngles::new(0.0, 0.0, 0.0)),
        ("all pi/2", PrepAngles::new(FRAC_PI_2, FRAC_PI_2, FRAC_PI_2)),
        ("mixed angles", PrepAngles::new(0.4, 1.1, 0.9)),
        ("pi/2, 0, 0", PrepAngles::new(FRAC_PI_2, 0.0, 0.0)),
    ];
    for (name, angles) in samples {
        let state = simulate(&build_min3_prep(angles)?)?;
        let exp = exact_expectations(&MarginalSet::from_pure(&state), &plan)?;
        let occ = occupations(&one_rdms(&exp)?);
        let verdict = check_constraints(&occ)?;
        let [n4, n5, n6] = occ.lower_half().expect("three qubits give six occupations");
        println!(
            "{name:<13} (n4, n5, n6) = ({n4:.3}, {n5:.3}, {n6:.3})  slack {:+.3}  pauli {}  generalized {}",
            verdict.slack, verdict.pauli_ok, verdict.generalized_ok
        );
    }
    Ok(())
}
