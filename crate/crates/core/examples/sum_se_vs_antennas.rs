// Phase-1 sum SE against the MC BS array size for coarse and ideal ADCs,
// closed form next to Monte Carlo.
//
//     cargo run --release --example sum_se_vs_antennas

use fdbackhaul::analytic::se;
use fdbackhaul::montecarlo::{mc_se, McSettings};
use fdbackhaul::{default_scenario, Bits, Phase};

pub fn main() -> anyhow::Result<()> {
    let mc = McSettings::new(1_000, 7);
    println!(
        "{:>5} {:>6} {:>10} {:>10} {:>8}",
        "M_rx", "b", "analytic", "mc", "mc_se"
    );
    for bits in [Bits::Finite(1), Bits::Finite(2), Bits::Infinite] {
        for m in [50, 100, 200] {
            let scn = default_scenario()
                .with_phase1_antennas(m, m)
                .with_bits(bits);
            let an = se(&scn, Phase::One)?;
            let sim = mc_se(&scn, &scn.stats(), Phase::One, &mc)?;
            // Spread of the summed desired term, a rough error bar on the SE.
            let err: f64 = sim
                .links()
                .filter_map(|l| l.std_err.map(|e| e.desired / l.terms.desired * l.se))
                .map(|e| e * e)
                .sum::<f64>()
                .sqrt();
            println!(
                "{m:>5} {:>6} {:>10.4} {:>10.4} {:>8.4}",
                bits.to_string(),
                an.sum_se_total(),
                sim.sum_se_total(),
                err
            );
        }
    }
    Ok(())
}
