// Transmit power cut in proportion to the array size: p = E / antennas.
// The SE saturates at a nonzero level; the saturated values are printed
// alongside.
//
//     cargo run --release --example power_scaling

use fdbackhaul::analytic::{power_scaling_limit, se, with_power_scaling};
use fdbackhaul::params::db_to_linear;
use fdbackhaul::{default_scenario, Bits, Phase};

pub fn main() -> anyhow::Result<()> {
    let e = db_to_linear(10.0);
    for phase in Phase::BOTH {
        println!("phase {phase}");
        for bits in [Bits::Finite(1), Bits::Finite(3), Bits::Infinite] {
            let base = default_scenario().with_bits(bits);
            let limit =
                power_scaling_limit(e, e, &base.fading, &base.adc, phase, base.system.tau_d())?;
            print!("  b={bits:<4}");
            for m in [100, 1_000, 10_000] {
                let scn =
                    with_power_scaling(base.clone().with_antennas(phase, m, m / 2), phase, e, e);
                print!(" M={m}: {:7.4}", se(&scn, phase)?.sum_se_total());
            }
            println!("  limit: {:7.4}", limit.sum_se_total());
        }
    }
    Ok(())
}
