// Closed-form SINR terms against Monte Carlo at reduced scale, then the same
// run with a corrupted κ entry on the analytic side.
//
//     cargo run --release --example validate_closed_forms

use fdbackhaul::montecarlo::McSettings;
use fdbackhaul::params::KappaTable;
use fdbackhaul::validate::{validate, ValidateSettings};
use fdbackhaul::{default_scenario, Bits};

pub fn main() -> anyhow::Result<()> {
    let settings = ValidateSettings {
        mc: McSettings::new(5_000, 11),
        bits: vec![Bits::Finite(2), Bits::Infinite],
        phase1_arrays: (64, 32),
        phase2_arrays: (32, 32),
        term_rel_tol: 0.15,
        sum_rel_tol: 0.05,
        ..Default::default()
    };
    let scn = default_scenario();
    let clean = validate(&scn, &settings)?;
    println!(
        "clean: {} checks, passed = {}",
        clean.checks.len(),
        clean.passed()
    );
    if let Some(w) = clean.worst() {
        println!("  closest: {w}");
    }

    let broken = ValidateSettings {
        analytic_kappa: Some(KappaTable::STANDARD.with_entry(2, 0.03)?),
        ..settings
    };
    let bad = validate(&scn, &broken)?;
    println!("corrupted: {} failures", bad.failures().count());
    if let Some(w) = bad.worst() {
        println!("  worst: {w}");
    }
    Ok(())
}
