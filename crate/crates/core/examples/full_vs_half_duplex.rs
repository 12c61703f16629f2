// Full duplex against half duplex under strong residual self-interference:
// the array size beyond which FD wins, for 4 and 6 small cells.
//
//     cargo run --release --example full_vs_half_duplex

use fdbackhaul::analytic::{fd_hd_crossover, se_half_duplex, se_phase1};
use fdbackhaul::params::ScenarioFile;
use fdbackhaul::{Bits, Phase};

pub fn main() -> anyhow::Result<()> {
    for cells in [4, 6] {
        let mut file = ScenarioFile::default();
        file.system.small_cells = cells;
        file.set_interference(0.5, 0.3);
        file.set_bits(Bits::Finite(3));
        file.set_common_k_db(10.0);
        let scn = file.build()?;

        for m in [50, 100, 200, 400] {
            let p = scn.clone().with_phase1_antennas(m, m / 2);
            let stats = p.stats();
            let fd = se_phase1(&p, &stats)?.sum_se_total();
            let hd = se_half_duplex(&p, &stats, Phase::One)?.sum_se_total();
            println!("S={cells} M_rx={m:>3}  FD {fd:7.3}  HD {hd:7.3}");
        }
        match fd_hd_crossover(&scn, (10..=600).step_by(10), 0.5)? {
            Some(m) => println!("S={cells}: FD overtakes HD at M_rx = {m}"),
            None => println!("S={cells}: no crossover up to 600"),
        }
    }
    Ok(())
}
