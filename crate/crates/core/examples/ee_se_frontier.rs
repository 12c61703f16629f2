// EE against SE as the resolution runs from 1 to 15 bits, for two K-factors.
//
//     cargo run --release --example ee_se_frontier

use fdbackhaul::energy::{ee_se_frontier, PowerModel};
use fdbackhaul::params::db_to_linear;
use fdbackhaul::{default_scenario, Phase};

pub fn main() -> anyhow::Result<()> {
    for k_db in [0.0, 10.0] {
        let scn = default_scenario()
            .with_phase1_antennas(300, 200)
            .with_common_k(db_to_linear(k_db));
        println!("K = {k_db} dB");
        for p in ee_se_frontier(Phase::One, &scn, &PowerModel::default(), 1..=15)? {
            println!(
                "  b={:>2}  SE {:7.3}  EE {:8.2} Mbit/J",
                p.bits,
                p.sum_se,
                p.ee / 1e6
            );
        }
    }
    Ok(())
}
