// EE-maximizing ADC resolution for low-, mid- and high-power converters.
//
//     cargo run --release --example ee_optimal_bits

use fdbackhaul::energy::{optimal_bits, PowerModel};
use fdbackhaul::{default_scenario, Phase};

pub fn main() -> anyhow::Result<()> {
    let p1 = default_scenario().with_phase1_antennas(300, 200);
    for fom in [
        PowerModel::LOW_POWER_FOM,
        15e-15,
        PowerModel::INTERMEDIATE_FOM,
        PowerModel::HIGH_POWER_FOM,
    ] {
        let model = PowerModel::default().with_fom(fom);
        let (b, r) = optimal_bits(Phase::One, &p1, &model, 1..=15)?;
        println!(
            "phase 1, FOM {:>3.0} fJ: b* = {b}, EE {:.1} Mbit/J, SE {:.2}",
            fom * 1e15,
            r.ee.unwrap_or_default() / 1e6,
            r.sum_se
        );
    }
    let p2 = default_scenario().with_phase2_antennas(500, 250);
    let (b, r) = optimal_bits(Phase::Two, &p2, &PowerModel::default(), 1..=15)?;
    println!(
        "phase 2, FOM  15 fJ: b* = {b}, EE {:.2} Gbit/J",
        r.ee.unwrap_or_default() / 1e9
    );
    Ok(())
}
