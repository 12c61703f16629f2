// Sum SE as the Rician K-factor grows, against the K -> infinity limit.
//
//     cargo run --release --example k_convergence

use fdbackhaul::analytic::{limit_k_infinity, se};
use fdbackhaul::params::db_to_linear;
use fdbackhaul::{default_scenario, Phase};

pub fn main() -> anyhow::Result<()> {
    let base = default_scenario().with_phase1_antennas(700, 350);
    let limit = limit_k_infinity(&base, Phase::One)?.sum_se_total();
    println!("limit {limit:.4}");
    for k_db in [-10.0, 0.0, 10.0, 20.0, 30.0, 40.0] {
        let scn = base.clone().with_common_k(db_to_linear(k_db));
        let v = se(&scn, Phase::One)?.sum_se_total();
        println!(
            "K = {k_db:>5} dB  SE {v:8.4}  gap {:+.3}%",
            100.0 * (v - limit) / limit
        );
    }
    Ok(())
}
