//! Rician channel realizations with their MMSE estimates and errors.
//!
//! Estimates are synthesized directly from their MMSE statistics: each
//! estimate is its LoS mean plus circularly-symmetric Gaussian scattering of
//! variance `ξη`, and the independent error has variance `ξ(1 − η)`.

use std::f64::consts::PI;

use num_complex::Complex64;
use rand::Rng;
use rand_distr::StandardNormal;

use crate::error::{Error, Result};
use crate::params::{EstimationStats, Phase, Scenario};

pub type CVec = Vec<Complex64>;

/// ULA steering vector with half-wavelength spacing: entry `m` is
/// `exp(−j·m·π·sin θ)`, `m = 0..n`.
pub fn steering_vector(n: usize, theta: f64) -> CVec {
    let step = -PI * theta.sin();
    (0..n)
        .map(|m| Complex64::from_polar(1.0, step * m as f64))
        .collect()
}

/// `|a(θ_k)^H a(θ_j)|²` for `n`-element steering vectors, evaluated through
/// the Dirichlet kernel. Equals `n²` when the effective angles coincide.
pub fn dirichlet_sq(n: usize, theta_k: f64, theta_j: f64) -> f64 {
    let x = PI / 2.0 * (theta_k.sin() - theta_j.sin());
    let den = x.sin();
    if den.abs() < 1e-300 {
        return (n * n) as f64;
    }
    let ratio = (n as f64 * x).sin() / den;
    ratio * ratio
}

/// Draws `CN(0, var)`.
#[inline]
pub fn complex_normal<R: Rng + ?Sized>(rng: &mut R, var: f64) -> Complex64 {
    let scale = (var / 2.0).sqrt();
    let re: f64 = rng.sample(StandardNormal);
    let im: f64 = rng.sample(StandardNormal);
    Complex64::new(re * scale, im * scale)
}

pub fn complex_normal_vec<R: Rng + ?Sized>(rng: &mut R, n: usize, var: f64) -> CVec {
    (0..n).map(|_| complex_normal(rng, var)).collect()
}

/// `a^H b`.
#[inline]
pub fn inner(a: &[Complex64], b: &[Complex64]) -> Complex64 {
    a.iter().zip(b).map(|(x, y)| x.conj() * y).sum()
}

/// `a^T b`, the product of a row channel with a column vector.
#[inline]
pub fn row_times(a: &[Complex64], b: &[Complex64]) -> Complex64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

#[inline]
pub fn norm_sq(a: &[Complex64]) -> f64 {
    a.iter().map(Complex64::norm_sqr).sum()
}

/// One joint draw of every channel of a phase.
///
/// `h_hat`, `e` hold the columns of `Ĥ` and `E` (length `M_rx` in phase 1,
/// `M_tx` in phase 2); `g_hat`, `d` are the SC-side vectors (length `N_rx`
/// or `N_tx`). Phase-1 interference links are `q` (the columns of `Q`),
/// `q_s` and `q_c`; phase-2 links are the rows `z_m`, `z_s` and `z_c`. The
/// links of the other phase are left empty, as are the `[k][k]` entries of
/// `q_c`/`z_c`.
#[derive(Debug, Clone, PartialEq)]
pub struct ChannelRealization {
    pub phase: Phase,
    pub h_hat: Vec<CVec>,
    pub e: Vec<CVec>,
    pub g_hat: Vec<CVec>,
    pub d: Vec<CVec>,
    pub q: Vec<CVec>,
    pub q_s: Vec<CVec>,
    pub q_c: Vec<Vec<CVec>>,
    pub z_m: Vec<CVec>,
    pub z_s: Vec<CVec>,
    pub z_c: Vec<Vec<CVec>>,
}

impl ChannelRealization {
    /// True channel `h_k = ĥ_k + e_k`.
    pub fn h(&self, k: usize) -> CVec {
        self.h_hat[k]
            .iter()
            .zip(&self.e[k])
            .map(|(a, b)| a + b)
            .collect()
    }

    /// True channel `g_k = ĝ_k + d_k`.
    pub fn g(&self, k: usize) -> CVec {
        self.g_hat[k]
            .iter()
            .zip(&self.d[k])
            .map(|(a, b)| a + b)
            .collect()
    }
}

#[derive(Debug, Clone)]
struct LinkSampler {
    los: CVec,
    hat_var: f64,
    err_var: f64,
}

impl LinkSampler {
    fn draw<R: Rng + ?Sized>(&self, rng: &mut R) -> (CVec, CVec) {
        let hat = self
            .los
            .iter()
            .map(|m| m + complex_normal(rng, self.hat_var))
            .collect();
        let err = complex_normal_vec(rng, self.los.len(), self.err_var);
        (hat, err)
    }
}

/// Precomputed LoS means and variances for repeated draws of one phase.
#[derive(Debug, Clone)]
pub struct ChannelSampler {
    phase: Phase,
    h: Vec<LinkSampler>,
    g: Vec<LinkSampler>,
    mc_len: usize,
    sc_len: usize,
    m_tx: usize,
    sigma2_m: f64,
    si_sc: Vec<f64>,
    si_mc: Vec<f64>,
    cross: Vec<Vec<f64>>,
}

impl ChannelSampler {
    pub fn new(scn: &Scenario, stats: &EstimationStats, phase: Phase) -> Result<Self> {
        scn.system.check_roles(phase)?;
        let s = scn.system.small_cells;
        if stats.len() != s {
            return Err(Error::DimensionMismatch {
                expected: s,
                got: stats.len(),
            });
        }
        let mc_len = scn.system.mc_array(phase);
        let sc_len = scn.system.sc_array(phase);
        let link = |st: &crate::params::RicianStats, n: usize, theta: f64| LinkSampler {
            los: steering_vector(n, theta)
                .into_iter()
                .map(|a| a * st.los_amplitude())
                .collect(),
            hat_var: st.hat_var(),
            err_var: st.err_var(),
        };
        let h = (0..s)
            .map(|k| link(stats.h(k), mc_len, scn.fading.h_angle(phase, k)))
            .collect();
        let g = (0..s)
            .map(|k| link(stats.g(k), sc_len, scn.fading.g_angle(phase, k)))
            .collect();
        let intf = &scn.interference;
        let (si_sc, si_mc, cross) = match phase {
            Phase::One => (intf.sigma2_s.clone(), Vec::new(), intf.sigma2_c.clone()),
            Phase::Two => (
                intf.zeta2_s.clone(),
                intf.zeta2_m.clone(),
                intf.zeta2_c.clone(),
            ),
        };
        Ok(ChannelSampler {
            phase,
            h,
            g,
            mc_len,
            sc_len,
            m_tx: scn.system.m_tx,
            sigma2_m: intf.sigma2_m,
            si_sc,
            si_mc,
            cross,
        })
    }

    pub fn phase(&self) -> Phase {
        self.phase
    }

    pub fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> ChannelRealization {
        let s = self.h.len();
        let (h_hat, e): (Vec<_>, Vec<_>) = self.h.iter().map(|l| l.draw(rng)).unzip();
        let (g_hat, d): (Vec<_>, Vec<_>) = self.g.iter().map(|l| l.draw(rng)).unzip();
        let mut out = ChannelRealization {
            phase: self.phase,
            h_hat,
            e,
            g_hat,
            d,
            q: Vec::new(),
            q_s: Vec::new(),
            q_c: Vec::new(),
            z_m: Vec::new(),
            z_s: Vec::new(),
            z_c: Vec::new(),
        };
        let cross_links = |rng: &mut R| -> Vec<Vec<CVec>> {
            (0..s)
                .map(|k| {
                    (0..s)
                        .map(|j| {
                            if j == k {
                                Vec::new()
                            } else {
                                complex_normal_vec(rng, self.sc_len, self.cross[k][j])
                            }
                        })
                        .collect()
                })
                .collect()
        };
        match self.phase {
            Phase::One => {
                out.q = (0..self.m_tx)
                    .map(|_| complex_normal_vec(rng, self.mc_len, self.sigma2_m))
                    .collect();
                out.q_s = self
                    .si_sc
                    .iter()
                    .map(|&v| complex_normal_vec(rng, self.sc_len, v))
                    .collect();
                out.q_c = cross_links(rng);
            }
            Phase::Two => {
                out.z_m = self
                    .si_mc
                    .iter()
                    .map(|&v| complex_normal_vec(rng, self.mc_len, v))
                    .collect();
                out.z_s = self
                    .si_sc
                    .iter()
                    .map(|&v| complex_normal_vec(rng, self.sc_len, v))
                    .collect();
                out.z_c = cross_links(rng);
            }
        }
        out
    }
}

/// Draws one realization of every channel of `phase`.
pub fn draw_realization<R: Rng + ?Sized>(
    scn: &Scenario,
    stats: &EstimationStats,
    phase: Phase,
    rng: &mut R,
) -> Result<ChannelRealization> {
    Ok(ChannelSampler::new(scn, stats, phase)?.sample(rng))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::params::default_scenario;
    use approx::assert_relative_eq;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn steering_vector_examples() {
        let ones = steering_vector(4, 0.0);
        assert!(ones
            .iter()
            .all(|z| (z - Complex64::new(1.0, 0.0)).norm() < 1e-15));
        let v = steering_vector(2, PI / 2.0);
        assert!((v[0] - Complex64::new(1.0, 0.0)).norm() < 1e-15);
        assert!((v[1] - Complex64::new(-1.0, 0.0)).norm() < 1e-15);
        for &theta in &[-1.3, -0.2, 0.0, 0.7, 1.5] {
            assert_relative_eq!(norm_sq(&steering_vector(37, theta)), 37.0, epsilon = 1e-12);
        }
    }

    #[test]
    fn dirichlet_examples() {
        assert_eq!(dirichlet_sq(16, 0.3, 0.3), 256.0);
        // sin θ_k − sin θ_j = 2/n puts the pair on the first kernel null.
        let n = 8;
        let tk = (0.5f64).asin();
        let tj = (0.5 - 2.0 / n as f64).asin();
        assert!(dirichlet_sq(n, tk, tj) < 1e-20);
        let brute = inner(&steering_vector(n, tk), &steering_vector(n, 0.1)).norm_sqr();
        assert_relative_eq!(dirichlet_sq(n, tk, 0.1), brute, max_relative = 1e-10);
    }

    #[test]
    fn deterministic_los_without_randomness() {
        let mut scn = default_scenario().with_common_k(1e12);
        scn.system.p_tau = 1e14;
        let stats = scn.stats();
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let r = draw_realization(&scn, &stats, Phase::One, &mut rng).unwrap();
        let st = stats.h(2);
        let expected: CVec = steering_vector(scn.system.m_rx, scn.fading.aoa_m[2])
            .into_iter()
            .map(|a| a * st.los_amplitude())
            .collect();
        let dev = r.h_hat[2]
            .iter()
            .zip(&expected)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max);
        assert!(dev / st.los_amplitude() < 1e-4, "deviation {dev}");
    }

    #[test]
    fn zero_si_variance_gives_zero_links() {
        let mut scn = default_scenario();
        scn.interference.sigma2_m = 0.0;
        let stats = scn.stats();
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let r = draw_realization(&scn, &stats, Phase::One, &mut rng).unwrap();
        assert_eq!(r.q.len(), scn.system.m_tx);
        assert!(r.q.iter().flatten().all(|z| *z == Complex64::new(0.0, 0.0)));
    }

    #[test]
    fn dimensions_follow_roles() {
        let scn = default_scenario().with_phase2_antennas(40, 24);
        let stats = scn.stats();
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let r = draw_realization(&scn, &stats, Phase::Two, &mut rng).unwrap();
        assert!(r.h_hat.iter().all(|h| h.len() == 40));
        assert!(r.g_hat.iter().all(|g| g.len() == 24));
        assert_eq!(r.z_m.len(), 6);
        assert!(r.z_m.iter().all(|z| z.len() == 40));
        assert!(r.z_c[0][1].len() == 24 && r.z_c[0][0].is_empty());
        assert!(r.q.is_empty());
        assert!(matches!(
            draw_realization(&scn, &stats, Phase::One, &mut rng),
            Err(Error::RoleMismatch { .. })
        ));
    }

    #[test]
    fn reconstruction_and_reproducibility() {
        let scn = default_scenario().with_phase1_antennas(32, 16);
        let stats = scn.stats();
        let a =
            draw_realization(&scn, &stats, Phase::One, &mut ChaCha8Rng::seed_from_u64(9)).unwrap();
        let b =
            draw_realization(&scn, &stats, Phase::One, &mut ChaCha8Rng::seed_from_u64(9)).unwrap();
        assert_eq!(a, b);
        let h0 = a.h(0);
        for (n, &v) in h0.iter().enumerate() {
            assert_eq!(v, a.h_hat[0][n] + a.e[0][n]);
        }
    }

    #[test]
    fn norm_law_of_large_numbers() {
        // E[‖ĥ_k‖²]/M = β(K + η)/(K + 1)
        let scn = default_scenario().with_phase1_antennas(16, 4);
        let stats = scn.stats();
        let sampler = ChannelSampler::new(&scn, &stats, Phase::One).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let n = 10_000;
        let samples: Vec<f64> = (0..n)
            .map(|_| norm_sq(&sampler.sample(&mut rng).h_hat[1]) / 16.0)
            .collect();
        let mean = samples.iter().sum::<f64>() / n as f64;
        let var = samples.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / (n - 1) as f64;
        let se = (var / n as f64).sqrt();
        let analytic = stats.h(1).entry_power();
        assert!(
            (mean - analytic).abs() < 3.0 * se,
            "{mean} vs {analytic} (se {se})"
        );
    }

    #[test]
    fn error_variances_and_orthogonality() {
        let scn = default_scenario().with_phase1_antennas(8, 8);
        let stats = scn.stats();
        let sampler = ChannelSampler::new(&scn, &stats, Phase::One).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(12);
        let n = 20_000;
        let (mut e_pow, mut d_pow, mut cross) = (0.0, 0.0, Complex64::new(0.0, 0.0));
        for _ in 0..n {
            let r = sampler.sample(&mut rng);
            e_pow += norm_sq(&r.e[0]) / 8.0;
            d_pow += norm_sq(&r.d[2]) / 8.0;
            // ĥ minus its mean against e: zero-mean cross-covariance
            let centered: CVec = r.h_hat[0]
                .iter()
                .zip(&sampler.h[0].los)
                .map(|(a, m)| a - m)
                .collect();
            cross += inner(&centered, &r.e[1]) / 8.0;
        }
        let n = n as f64;
        let bt = stats.beta_tilde[0];
        let at = stats.alpha_tilde[2];
        // Per-sample std of the mean of 8 exponential entries is var/√8.
        assert!((e_pow / n - bt).abs() < 4.0 * bt / (8.0 * n).sqrt());
        assert!((d_pow / n - at).abs() < 4.0 * at / (8.0 * n).sqrt());
        let cross_sd = (stats.beta_hat[0] * stats.beta_tilde[1] / 8.0).sqrt() / n.sqrt();
        assert!((cross / n).norm() < 4.0 * cross_sd);
    }
}
