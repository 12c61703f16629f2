// The additive quantization noise model on a synthetic received vector:
// output power equals ρ² times input power plus the QN variance.
//
//     cargo run --release --example quantizer_aqnm

use fdbackhaul::channel::{complex_normal_vec, norm_sq};
use fdbackhaul::params::kappa;
use fdbackhaul::quantizer::quantize;
use fdbackhaul::Bits;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub fn main() -> anyhow::Result<()> {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let n = 1_000;
    let power = vec![2.0; n];
    for b in 1..=5 {
        let rho = 1.0 - kappa(Bits::Finite(b));
        let (mut out, mut inp, mut qn) = (0.0, 0.0, 0.0);
        let trials = 200;
        for _ in 0..trials {
            let y = complex_normal_vec(&mut rng, n, 2.0);
            let q = quantize(&y, rho, &power, &mut rng)?;
            inp += norm_sq(&y);
            out += norm_sq(&q.y_q);
            qn += q.qn_covariance.iter().sum::<f64>();
        }
        let t = trials as f64;
        println!(
            "b={b}  rho={rho:.4}  E|y_q|^2 {:9.1}  rho^2 E|y|^2 + tr(C_q) {:9.1}",
            out / t,
            rho * rho * inp / t + qn / t
        );
    }
    Ok(())
}
