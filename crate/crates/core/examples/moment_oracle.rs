// Channel-estimate moments in closed form against sample averages.
//
//     cargo run --release --example moment_oracle

use fdbackhaul::default_scenario;
use fdbackhaul::montecarlo::{moment_oracle, McSettings};

pub fn main() -> anyhow::Result<()> {
    let scn = default_scenario();
    let stats = scn.stats();
    println!(
        "entry variance of the estimate: {:.4}",
        stats.h(0).entry_power()
    );
    for m in moment_oracle(&scn, &stats, &McSettings::new(20_000, 5))? {
        println!(
            "{:<24} analytic {:12.5}  empirical {:12.5}  z {:+.2}",
            m.name,
            m.analytic,
            m.empirical,
            m.z_score()
        );
    }
    Ok(())
}
