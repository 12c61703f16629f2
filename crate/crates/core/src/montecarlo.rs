//! Monte Carlo estimates of the SINR expectations.
//!
//! Each realization draws every channel; data symbols, thermal noise and
//! quantization noise are integrated out analytically given the channels.
//! Numerator and denominator terms are averaged separately and the SE is
//! formed from the averages.
//!
//! Realizations are split into fixed-size batches. Batch `i` owns the
//! ChaCha8 stream `i` of the master seed, and batch partial sums are merged
//! in index order, so results do not depend on the thread count.

use num_complex::Complex64;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::analytic::{precoder_normalization, LinkRate, Method, RateReport, SinrTerms};
use crate::channel::{inner, norm_sq, row_times, ChannelRealization, ChannelSampler};
use crate::error::{Error, Result};
use crate::params::{EstimationStats, Phase, Scenario};
use crate::quantizer::{qn_diag, qn_scalar};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(default)]
pub struct McSettings {
    pub n_realizations: usize,
    pub seed: u64,
    /// Realizations per parallel work unit.
    pub batch: usize,
}

impl Default for McSettings {
    fn default() -> Self {
        McSettings {
            n_realizations: 10_000,
            seed: 1,
            batch: 256,
        }
    }
}

impl McSettings {
    pub fn new(n_realizations: usize, seed: u64) -> Self {
        McSettings {
            n_realizations,
            seed,
            ..Default::default()
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.n_realizations == 0 {
            return Err(Error::config("at least one realization is required"));
        }
        if self.batch == 0 {
            return Err(Error::config("batch size must be at least 1"));
        }
        Ok(())
    }
}

/// Running sum and sum of squares of one i.i.d. sample stream.
#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct Stat {
    pub count: f64,
    pub sum: f64,
    pub sum_sq: f64,
}

impl Stat {
    #[inline]
    pub fn push(&mut self, x: f64) {
        self.count += 1.0;
        self.sum += x;
        self.sum_sq += x * x;
    }

    pub fn merge(&mut self, other: &Stat) {
        self.count += other.count;
        self.sum += other.sum;
        self.sum_sq += other.sum_sq;
    }

    pub fn mean(&self) -> f64 {
        self.sum / self.count
    }

    /// Standard error of the mean.
    pub fn std_err(&self) -> f64 {
        if self.count < 2.0 {
            return f64::INFINITY;
        }
        let mean = self.mean();
        let var = ((self.sum_sq - self.count * mean * mean) / (self.count - 1.0)).max(0.0);
        (var / self.count).sqrt()
    }
}

/// Runs `per_draw` over all realizations, accumulating `width` statistics.
pub(crate) fn accumulate<F>(settings: &McSettings, width: usize, per_draw: F) -> Result<Vec<Stat>>
where
    F: Fn(&mut ChaCha8Rng, &mut [Stat]) + Sync,
{
    settings.validate()?;
    let n = settings.n_realizations;
    let batches = n.div_ceil(settings.batch);
    let partials: Vec<Vec<Stat>> = (0..batches)
        .into_par_iter()
        .map(|b| {
            let mut rng = ChaCha8Rng::seed_from_u64(settings.seed);
            rng.set_stream(b as u64);
            let count = settings.batch.min(n - b * settings.batch);
            let mut acc = vec![Stat::default(); width];
            for _ in 0..count {
                per_draw(&mut rng, &mut acc);
            }
            acc
        })
        .collect();
    let mut total = vec![Stat::default(); width];
    for part in &partials {
        for (t, p) in total.iter_mut().zip(part) {
            t.merge(p);
        }
    }
    Ok(total)
}

const TERMS: usize = 7;

fn push_terms(acc: &mut [Stat], link: usize, t: [f64; TERMS]) {
    for (i, v) in t.into_iter().enumerate() {
        acc[link * TERMS + i].push(v);
    }
}

fn assemble(phase: Phase, prelog: f64, s: usize, acc: &[Stat]) -> RateReport {
    let link = |l: usize| {
        let slot = &acc[l * TERMS..(l + 1) * TERMS];
        let mean = SinrTerms::from_array(std::array::from_fn(|i| slot[i].mean()));
        let se = SinrTerms::from_array(std::array::from_fn(|i| slot[i].std_err()));
        LinkRate {
            std_err: Some(se),
            ..LinkRate::new(mean, prelog)
        }
    };
    RateReport {
        phase,
        method: Method::MonteCarlo,
        prelog,
        mc_links: (0..s).map(link).collect(),
        sc_links: (s..2 * s).map(link).collect(),
    }
}

fn sq(z: Complex64) -> f64 {
    z.norm_sqr()
}

/// `Σ_n |a_n|² w_n`.
fn weighted(a: &[Complex64], w: &[f64]) -> f64 {
    a.iter().zip(w).map(|(x, w)| x.norm_sqr() * w).sum()
}

fn phase1_draw(scn: &Scenario, rho: f64, eps: f64, r: &ChannelRealization, acc: &mut [Stat]) {
    let sys = &scn.system;
    let s = sys.small_cells;
    let (p_m, p_s) = (sys.p_m, sys.p_s);
    let (r2, e2) = (rho * rho, eps * eps);

    // Per-antenna received power at the MC BS given the channels.
    let h_true: Vec<Vec<Complex64>> = (0..s).map(|j| r.h(j)).collect();
    let rx_mc: Vec<f64> = (0..sys.m_rx)
        .map(|n| {
            let data: f64 = h_true.iter().map(|h| h[n].norm_sqr()).sum();
            let si: f64 = r.q.iter().map(|q| q[n].norm_sqr()).sum();
            p_s * data + p_m * si + 1.0
        })
        .collect();
    let nq = qn_diag(rho, &rx_mc).expect("distortion factor validated by the scenario");
    for k in 0..s {
        let hk = &r.h_hat[k];
        let nk = norm_sq(hk);
        let ici: f64 = (0..s)
            .filter(|&j| j != k)
            .map(|j| sq(inner(hk, &r.h_hat[j])))
            .sum();
        let est: f64 = r.e.iter().map(|e| sq(inner(hk, e))).sum();
        let si: f64 = r.q.iter().map(|q| sq(inner(hk, q))).sum();
        push_terms(
            acc,
            k,
            [
                r2 * p_s * nk * nk,
                r2 * p_s * ici,
                r2 * p_s * est,
                r2 * p_m * si,
                0.0,
                r2 * nk,
                weighted(hk, &nq),
            ],
        );
    }

    let g_true: Vec<Vec<Complex64>> = (0..s).map(|j| r.g(j)).collect();
    for k in 0..s {
        let gk = &r.g_hat[k];
        let rx: Vec<f64> = (0..sys.n_rx)
            .map(|n| {
                let data: f64 = g_true.iter().map(|g| g[n].norm_sqr()).sum();
                let cross: f64 = (0..s)
                    .filter(|&j| j != k)
                    .map(|j| r.q_c[k][j][n].norm_sqr())
                    .sum();
                p_m * data + p_s * r.q_s[k][n].norm_sqr() + p_s * cross + 1.0
            })
            .collect();
        let vq = qn_diag(eps, &rx).expect("distortion factor validated by the scenario");
        let nk = norm_sq(gk);
        let ici: f64 = (0..s)
            .filter(|&j| j != k)
            .map(|j| sq(inner(gk, &r.g_hat[j])))
            .sum();
        let est: f64 = r.d.iter().map(|d| sq(inner(gk, d))).sum();
        let si = sq(inner(gk, &r.q_s[k]));
        let sc2sc: f64 = (0..s)
            .filter(|&j| j != k)
            .map(|j| sq(inner(gk, &r.q_c[k][j])))
            .sum();
        push_terms(
            acc,
            s + k,
            [
                e2 * p_m * nk * nk,
                e2 * p_m * ici,
                e2 * p_m * est,
                e2 * p_s * si,
                e2 * p_s * sc2sc,
                e2 * nk,
                weighted(gk, &vq),
            ],
        );
    }
}

struct Phase2Consts {
    rho: f64,
    eps: f64,
    mu_m2: f64,
    mu_s2: Vec<f64>,
}

fn phase2_draw(scn: &Scenario, c: &Phase2Consts, r: &ChannelRealization, acc: &mut [Stat]) {
    let sys = &scn.system;
    let s = sys.small_cells;
    let (p_m, p_s) = (sys.p_m, sys.p_s);
    let (r2, e2) = (c.rho * c.rho, c.eps * c.eps);
    let mu_s2 = &c.mu_s2;

    for k in 0..s {
        let a: Vec<Complex64> = r.g_hat.iter().map(|g| inner(&r.g_hat[k], g)).collect();
        let b: Vec<Complex64> = r.g_hat.iter().map(|g| inner(&r.d[k], g)).collect();
        let desired = p_s * mu_s2[k] * sq(a[k]);
        let ici: f64 = (0..s)
            .filter(|&j| j != k)
            .map(|j| p_s * mu_s2[j] * sq(a[j]))
            .sum();
        let est: f64 = (0..s).map(|j| p_s * mu_s2[j] * sq(b[j])).sum();
        let si = p_m
            * c.mu_m2
            * r.h_hat
                .iter()
                .map(|h| sq(row_times(&r.z_m[k], h)))
                .sum::<f64>();
        let data: f64 = (0..s).map(|j| p_s * mu_s2[j] * sq(a[j] + b[j])).sum();
        let qn =
            qn_scalar(c.rho, data + si + 1.0).expect("distortion factor validated by the scenario");
        push_terms(
            acc,
            k,
            [r2 * desired, r2 * ici, r2 * est, r2 * si, 0.0, r2, qn],
        );
    }

    for k in 0..s {
        let cc: Vec<Complex64> = r.h_hat.iter().map(|h| inner(&r.h_hat[k], h)).collect();
        let ee: Vec<Complex64> = r.h_hat.iter().map(|h| inner(&r.e[k], h)).collect();
        let desired = p_m * c.mu_m2 * sq(cc[k]);
        let ici: f64 = (0..s)
            .filter(|&j| j != k)
            .map(|j| p_m * c.mu_m2 * sq(cc[j]))
            .sum();
        let est: f64 = (0..s).map(|j| p_m * c.mu_m2 * sq(ee[j])).sum();
        let si = p_s * mu_s2[k] * sq(row_times(&r.z_s[k], &r.g_hat[k]));
        let sc2sc: f64 = (0..s)
            .filter(|&j| j != k)
            .map(|j| p_s * mu_s2[j] * sq(row_times(&r.z_c[k][j], &r.g_hat[j])))
            .sum();
        let data: f64 = (0..s).map(|j| p_m * c.mu_m2 * sq(cc[j] + ee[j])).sum();
        let qn = qn_scalar(c.eps, data + si + sc2sc + 1.0)
            .expect("distortion factor validated by the scenario");
        push_terms(
            acc,
            s + k,
            [
                e2 * desired,
                e2 * ici,
                e2 * est,
                e2 * si,
                e2 * sc2sc,
                e2,
                qn,
            ],
        );
    }
}

fn check_distortion(rho: f64) -> Result<()> {
    if rho > 0.0 && rho <= 1.0 {
        Ok(())
    } else {
        Err(Error::InvalidDistortion(rho))
    }
}

/// Monte Carlo SE of `phase` with per-term standard errors.
pub fn mc_se(
    scn: &Scenario,
    stats: &EstimationStats,
    phase: Phase,
    mc: &McSettings,
) -> Result<RateReport> {
    scn.check(phase)?;
    let rho = scn.adc.rho(phase);
    let eps = scn.adc.eps(phase);
    check_distortion(rho)?;
    check_distortion(eps)?;
    let sampler = ChannelSampler::new(scn, stats, phase)?;
    let s = scn.system.small_cells;
    let width = 2 * s * TERMS;
    let acc = match phase {
        Phase::One => accumulate(mc, width, |rng, acc| {
            phase1_draw(scn, rho, eps, &sampler.sample(rng), acc)
        })?,
        Phase::Two => {
            let (mu_m2, mu_s2) = precoder_normalization(scn, stats);
            let c = Phase2Consts {
                rho,
                eps,
                mu_m2,
                mu_s2,
            };
            accumulate(mc, width, |rng, acc| {
                phase2_draw(scn, &c, &sampler.sample(rng), acc)
            })?
        }
    };
    Ok(assemble(phase, scn.system.tau_d(), s, &acc))
}

pub fn mc_se_phase1(
    scn: &Scenario,
    stats: &EstimationStats,
    mc: &McSettings,
) -> Result<RateReport> {
    mc_se(scn, stats, Phase::One, mc)
}

pub fn mc_se_phase2(
    scn: &Scenario,
    stats: &EstimationStats,
    mc: &McSettings,
) -> Result<RateReport> {
    mc_se(scn, stats, Phase::Two, mc)
}

/// One analytic moment against its empirical estimate.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MomentCheck {
    pub name: String,
    pub analytic: f64,
    pub empirical: f64,
    pub std_err: f64,
}

impl MomentCheck {
    /// Discrepancy in standard-error units.
    pub fn z_score(&self) -> f64 {
        (self.empirical - self.analytic) / self.std_err
    }
}

/// Compares the closed-form channel-estimate moments with draws of the
/// phase-1 channels. Entry-wise moments pool all antennas of each draw
/// (entries are independent); vector moments use one sample per draw.
/// Links 0 and 1 supply the cross moments, so at least two small cells are
/// required.
pub fn moment_oracle(
    scn: &Scenario,
    stats: &EstimationStats,
    mc: &McSettings,
) -> Result<Vec<MomentCheck>> {
    scn.check(Phase::One)?;
    if scn.system.small_cells < 2 {
        return Err(Error::config(
            "the moment oracle needs at least two small cells",
        ));
    }
    let sampler = ChannelSampler::new(scn, stats, Phase::One)?;
    let m = scn.system.m_rx;
    let (h0, h1) = (stats.h(0), stats.h(1));
    let dsq = crate::channel::dirichlet_sq(
        m,
        scn.fading.h_angle(Phase::One, 0),
        scn.fading.h_angle(Phase::One, 1),
    );
    let sigma2 = scn.interference.sigma2_m;
    let expected = [
        ("E|h_hat|^2", h0.entry_power()),
        ("E|h_hat|^4", h0.entry_fourth()),
        ("E|h_hat_k h_hat_j|^2", h0.entry_power() * h1.entry_power()),
        ("E|e|^2", stats.beta_tilde[0]),
        ("E|h_hat q|^2", sigma2 * h0.entry_power()),
        ("E||h_hat||^4", h0.norm_fourth(m)),
        ("E|h_hat_k^H h_hat_j|^2", h0.inner_sq(h1, m, dsq)),
    ];
    let acc = accumulate(mc, expected.len(), |rng, acc| {
        let r = sampler.sample(rng);
        let (a, b, e, q) = (&r.h_hat[0], &r.h_hat[1], &r.e[0], &r.q[0]);
        for n in 0..m {
            let p = a[n].norm_sqr();
            acc[0].push(p);
            acc[1].push(p * p);
            acc[2].push(p * b[n].norm_sqr());
            acc[3].push(e[n].norm_sqr());
            acc[4].push(p * q[n].norm_sqr());
        }
        let nrm = norm_sq(a);
        acc[5].push(nrm * nrm);
        acc[6].push(sq(inner(a, b)));
    })?;
    Ok(expected
        .iter()
        .zip(&acc)
        .map(|(&(name, analytic), st)| MomentCheck {
            name: name.to_string(),
            analytic,
            empirical: st.mean(),
            std_err: st.std_err(),
        })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::analytic::se;
    use crate::params::{default_scenario, Bits, InterferenceProfile};

    fn small(phase: Phase, bits: Bits) -> Scenario {
        default_scenario()
            .with_antennas(phase, 32, 16)
            .with_bits(bits)
    }

    #[test]
    fn stat_moments() {
        let mut s = Stat::default();
        for x in [1.0, 2.0, 3.0, 4.0] {
            s.push(x);
        }
        assert_eq!(s.mean(), 2.5);
        assert!((s.std_err() - (5.0f64 / 3.0 / 4.0).sqrt()).abs() < 1e-15);
    }

    #[test]
    fn interference_free_single_cell_has_zero_terms() {
        let mut scn = small(Phase::One, Bits::Infinite).with_common_k(0.0);
        scn.system.small_cells = 1;
        scn.system.m_tx = 1;
        scn.system.pilot_len = 2;
        scn.fading = crate::params::FadingProfile::homogeneous(1, 0.2, 0.2, 0.0, 0.0);
        scn.interference = InterferenceProfile::zero(1);
        let stats = scn.stats();
        let r = mc_se_phase1(&scn, &stats, &McSettings::new(200, 3)).unwrap();
        let t = r.mc_links[0].terms;
        assert_eq!(
            (t.ici, t.self_interference, t.quantization),
            (0.0, 0.0, 0.0)
        );
    }

    #[test]
    fn ideal_adc_phase2_has_zero_qn() {
        let scn = small(Phase::Two, Bits::Infinite);
        let r = mc_se_phase2(&scn, &scn.stats(), &McSettings::new(100, 1)).unwrap();
        assert!(r.links().all(|l| l.terms.quantization == 0.0));
    }

    #[test]
    fn agrees_with_closed_form_on_small_arrays() {
        for phase in Phase::BOTH {
            let scn = small(phase, Bits::Finite(2));
            let stats = scn.stats();
            let mc = mc_se(&scn, &stats, phase, &McSettings::new(4_000, 5)).unwrap();
            let an = se(&scn, phase).unwrap();
            for (a, m) in an.links().zip(mc.links()) {
                let (ta, tm, sd) = (
                    a.terms.to_array(),
                    m.terms.to_array(),
                    m.std_err.unwrap().to_array(),
                );
                for i in 0..TERMS {
                    if ta[i] == 0.0 {
                        assert_eq!(tm[i], 0.0);
                    } else {
                        assert!(
                            (tm[i] - ta[i]).abs() <= 5.0 * sd[i] + 1e-12 * ta[i],
                            "{phase} {}: {} vs {}",
                            SinrTerms::NAMES[i],
                            tm[i],
                            ta[i]
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn mrt_normalization_on_average() {
        let scn = small(Phase::Two, Bits::Finite(3));
        let stats = scn.stats();
        let sampler = ChannelSampler::new(&scn, &stats, Phase::Two).unwrap();
        let (mu_m2, _) = precoder_normalization(&scn, &stats);
        let acc = accumulate(&McSettings::new(5_000, 2), 1, |rng, acc| {
            let r = sampler.sample(rng);
            acc[0].push(mu_m2 * r.h_hat.iter().map(|h| norm_sq(h)).sum::<f64>());
        })
        .unwrap();
        let s = scn.system.small_cells as f64;
        assert!((acc[0].mean() - s).abs() < 3.0 * acc[0].std_err());
    }

    #[test]
    fn batch_split_does_not_depend_on_threads() {
        let scn = small(Phase::One, Bits::Finite(1));
        let stats = scn.stats();
        let settings = McSettings {
            n_realizations: 300,
            seed: 9,
            batch: 37,
        };
        let run = |threads| {
            rayon::ThreadPoolBuilder::new()
                .num_threads(threads)
                .build()
                .unwrap()
                .install(|| mc_se_phase1(&scn, &stats, &settings).unwrap())
        };
        assert_eq!(run(1), run(5));
    }

    #[test]
    fn doubling_realizations_halves_variance() {
        let scn = small(Phase::One, Bits::Finite(2));
        let stats = scn.stats();
        let a = mc_se_phase1(&scn, &stats, &McSettings::new(2_000, 4)).unwrap();
        let b = mc_se_phase1(&scn, &stats, &McSettings::new(4_000, 4)).unwrap();
        let va = a.mc_links[0].std_err.unwrap().desired.powi(2);
        let vb = b.mc_links[0].std_err.unwrap().desired.powi(2);
        let ratio = va / vb;
        assert!((1.6..2.5).contains(&ratio), "variance ratio {ratio}");
    }

    #[test]
    fn oracle_at_defaults() {
        let scn = default_scenario().with_phase1_antennas(8, 4);
        let stats = scn.stats();
        let checks = moment_oracle(&scn, &stats, &McSettings::new(20_000, 6)).unwrap();
        assert!((checks[0].analytic - 0.196).abs() < 1e-12);
        for c in &checks {
            assert!(c.z_score().abs() < 4.0, "{}: z = {}", c.name, c.z_score());
        }
    }

    #[test]
    fn rayleigh_kurtosis() {
        let scn = default_scenario()
            .with_phase1_antennas(8, 4)
            .with_common_k(0.0);
        let checks = moment_oracle(&scn, &scn.stats(), &McSettings::new(10, 1)).unwrap();
        assert!((checks[1].analytic - 2.0 * checks[0].analytic.powi(2)).abs() < 1e-15);
    }

    #[test]
    fn rejects_empty_settings() {
        let scn = small(Phase::One, Bits::Finite(2));
        let bad = McSettings {
            n_realizations: 0,
            ..Default::default()
        };
        assert!(mc_se_phase1(&scn, &scn.stats(), &bad).is_err());
    }
}
