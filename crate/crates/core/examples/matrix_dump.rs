//! Writes the GHZ(3) particle-hole matrix in both dump formats and checks
//! that the JSON form reads back exactly.

use exciton_core::rdm::{assemble_g_tilde, MatrixDump};
use exciton_core::sim::{build_ghz, simulate, MarginalSet};
use exciton_core::tomography::{all_pairs, exact_expectations, plan_settings, PauliMode};

fn main() -> exciton_core::Result<()> {
    let state = simulate(&build_ghz(3)?)?;
    let plan = plan_settings(3, &all_pairs(3), PauliMode::Full)?;
    let g = assemble_g_tilde(&exact_expectations(&MarginalSet::from_pure(&state), &plan)?)?;

    let dump = MatrixDump::new("g_tilde_ghz3", &g.matrix, g.labels())?;
    let dir = std::env::temp_dir();
    let json_path = dir.join("g_tilde_ghz3.json");
    let csv_path = dir.join("g_tilde_ghz3.csv");
    std::fs::write(&json_path, dump.to_json()?)?;
    std::fs::write(&csv_path, dump.to_csv())?;

    let back: MatrixDump = serde_json::from_str(&std::fs::read_to_string(&json_path)?)?;
    println!("wrote {} and {}", json_path.display(), csv_path.display());
    println!(
        "round-trip max difference: {:e}",
        back.to_matrix()?.max_abs_diff(&g.matrix)
    );
    for line in dump.to_csv().lines().take(6) {
        println!("{line}");
    }
    Ok(())
}
