//! Closed-form large-system SE, its K→∞ and power-scaling limits, and the
//! half-duplex baseline.
//!
//! Every link reports its SINR split into additive components. Components
//! are in absolute received-power units (they carry the `ρ²` and `ρ(1−ρ)`
//! factors of the quantized filter output), so they compare one-to-one with
//! the Monte Carlo estimates. The limit reports use the scale of the printed
//! limit expressions instead; only their ratios are meaningful.

use serde::{Deserialize, Serialize};

use crate::channel::dirichlet_sq;
use crate::error::{Error, Result};
use crate::params::{AdcConfig, EstimationStats, FadingProfile, Phase, Scenario};

/// Additive SINR components of one link.
#[derive(Debug, Clone, Copy, Default, PartialEq, Serialize, Deserialize)]
pub struct SinrTerms {
    pub desired: f64,
    pub ici: f64,
    pub estimation: f64,
    pub self_interference: f64,
    pub sc_to_sc: f64,
    pub noise: f64,
    pub quantization: f64,
}

impl SinrTerms {
    pub const NAMES: [&'static str; 7] = [
        "desired",
        "ici",
        "estimation",
        "self_interference",
        "sc_to_sc",
        "noise",
        "quantization",
    ];

    pub fn to_array(&self) -> [f64; 7] {
        [
            self.desired,
            self.ici,
            self.estimation,
            self.self_interference,
            self.sc_to_sc,
            self.noise,
            self.quantization,
        ]
    }

    pub fn from_array(a: [f64; 7]) -> Self {
        SinrTerms {
            desired: a[0],
            ici: a[1],
            estimation: a[2],
            self_interference: a[3],
            sc_to_sc: a[4],
            noise: a[5],
            quantization: a[6],
        }
    }

    /// Everything in the denominator.
    pub fn interference_plus_noise(&self) -> f64 {
        self.ici
            + self.estimation
            + self.self_interference
            + self.sc_to_sc
            + self.noise
            + self.quantization
    }

    /// Sum of every component except quantization noise, i.e. the received
    /// power before the `ρ` scaling.
    fn unquantized_total(&self) -> f64 {
        self.desired
            + self.ici
            + self.estimation
            + self.self_interference
            + self.sc_to_sc
            + self.noise
    }

    pub fn sinr(&self) -> f64 {
        self.desired / self.interference_plus_noise()
    }

    /// Applies the quantizer to unscaled terms: signal and interference get
    /// `ρ²`, and the QN term becomes `ρ(1−ρ)·qn_raw`.
    fn quantized(self, rho: f64, qn_raw: f64) -> Self {
        let r2 = rho * rho;
        SinrTerms {
            desired: r2 * self.desired,
            ici: r2 * self.ici,
            estimation: r2 * self.estimation,
            self_interference: r2 * self.self_interference,
            sc_to_sc: r2 * self.sc_to_sc,
            noise: r2 * self.noise,
            quantization: rho * (1.0 - rho) * qn_raw,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Method {
    Analytic,
    MonteCarlo,
    Limit,
}

/// One link's SINR components and SE.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LinkRate {
    pub terms: SinrTerms,
    /// Standard errors of the Monte Carlo term estimates.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub std_err: Option<SinrTerms>,
    pub se: f64,
}

impl LinkRate {
    pub fn new(terms: SinrTerms, prelog: f64) -> Self {
        LinkRate {
            terms,
            std_err: None,
            se: prelog * terms.sinr().ln_1p() / std::f64::consts::LN_2,
        }
    }

    pub fn sinr(&self) -> f64 {
        self.terms.sinr()
    }
}

/// Per-link SEs of one phase. In phase 1 `mc_links[k]` is the UL from SC-k
/// at the MC BS; in phase 2 it is MC receive antenna k. `sc_links[k]` is the
/// link received at SC-k.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RateReport {
    pub phase: Phase,
    pub method: Method,
    pub prelog: f64,
    pub mc_links: Vec<LinkRate>,
    pub sc_links: Vec<LinkRate>,
}

impl RateReport {
    pub fn from_terms(
        phase: Phase,
        method: Method,
        prelog: f64,
        mc: Vec<SinrTerms>,
        sc: Vec<SinrTerms>,
    ) -> Self {
        RateReport {
            phase,
            method,
            prelog,
            mc_links: mc.into_iter().map(|t| LinkRate::new(t, prelog)).collect(),
            sc_links: sc.into_iter().map(|t| LinkRate::new(t, prelog)).collect(),
        }
    }

    pub fn sum_se_mc(&self) -> f64 {
        self.mc_links.iter().map(|l| l.se).sum()
    }

    pub fn sum_se_sc(&self) -> f64 {
        self.sc_links.iter().map(|l| l.se).sum()
    }

    pub fn sum_se_total(&self) -> f64 {
        self.sum_se_mc() + self.sum_se_sc()
    }

    pub fn links(&self) -> impl Iterator<Item = &LinkRate> {
        self.mc_links.iter().chain(&self.sc_links)
    }
}

fn others(s: usize, k: usize) -> impl Iterator<Item = usize> {
    (0..s).filter(move |&j| j != k)
}

fn phase1_terms(scn: &Scenario, stats: &EstimationStats) -> (Vec<SinrTerms>, Vec<SinrTerms>) {
    let sys = &scn.system;
    let intf = &scn.interference;
    let s = sys.small_cells;
    let (m, n) = (sys.m_rx, sys.n_rx);
    let (mf, nf) = (m as f64, n as f64);
    let (p_m, p_s) = (sys.p_m, sys.p_s);
    let rho = scn.adc.rho(Phase::One);
    let eps = scn.adc.eps(Phase::One);
    let est_h: f64 = stats.beta_tilde.iter().sum();
    let est_g: f64 = stats.alpha_tilde.iter().sum();

    let mc = (0..s)
        .map(|k| {
            let hk = stats.h(k);
            let ep = hk.entry_power();
            let theta = scn.fading.h_angle(Phase::One, k);
            let ici: f64 = others(s, k)
                .map(|j| {
                    let dsq = dirichlet_sq(m, theta, scn.fading.h_angle(Phase::One, j));
                    hk.inner_sq(stats.h(j), m, dsq)
                })
                .sum();
            let cross: f64 = others(s, k).map(|j| ep * stats.h(j).entry_power()).sum();
            let si = sys.m_tx as f64 * intf.sigma2_m;
            let raw = SinrTerms {
                desired: p_s * hk.norm_fourth(m),
                ici: p_s * ici,
                estimation: p_s * mf * ep * est_h,
                self_interference: p_m * mf * ep * si,
                sc_to_sc: 0.0,
                noise: mf * ep,
                quantization: 0.0,
            };
            let qn =
                mf * (ep * (p_s * est_h + p_m * si + 1.0) + p_s * hk.entry_fourth() + p_s * cross);
            raw.quantized(rho, qn)
        })
        .collect();

    let sc = (0..s)
        .map(|k| {
            let gk = stats.g(k);
            let ep = gk.entry_power();
            let theta = scn.fading.g_angle(Phase::One, k);
            let ici: f64 = others(s, k)
                .map(|j| {
                    let dsq = dirichlet_sq(n, theta, scn.fading.g_angle(Phase::One, j));
                    gk.inner_sq(stats.g(j), n, dsq)
                })
                .sum();
            let cross: f64 = others(s, k).map(|j| ep * stats.g(j).entry_power()).sum();
            let si = intf.sigma2_s[k];
            let sc2sc = intf.sc_to_sc_total(Phase::One, k);
            let raw = SinrTerms {
                desired: p_m * gk.norm_fourth(n),
                ici: p_m * ici,
                estimation: p_m * nf * ep * est_g,
                self_interference: p_s * nf * ep * si,
                sc_to_sc: p_s * nf * ep * sc2sc,
                noise: nf * ep,
                quantization: 0.0,
            };
            let qn = nf
                * (ep * (p_m * est_g + p_s * si + p_s * sc2sc + 1.0)
                    + p_m * gk.entry_fourth()
                    + p_m * cross);
            raw.quantized(eps, qn)
        })
        .collect();
    (mc, sc)
}

/// MRT normalizations `μ_m²` and `μ_{s,k}²`.
pub fn precoder_normalization(scn: &Scenario, stats: &EstimationStats) -> (f64, Vec<f64>) {
    let sys = &scn.system;
    let s = sys.small_cells;
    let h_power: f64 = (0..s).map(|j| stats.h(j).entry_power()).sum();
    let mu_m2 = s as f64 / (sys.m_tx as f64 * h_power);
    let mu_s2 = (0..s)
        .map(|k| 1.0 / (sys.n_tx as f64 * stats.g(k).entry_power()))
        .collect();
    (mu_m2, mu_s2)
}

fn phase2_terms(scn: &Scenario, stats: &EstimationStats) -> (Vec<SinrTerms>, Vec<SinrTerms>) {
    let sys = &scn.system;
    let intf = &scn.interference;
    let s = sys.small_cells;
    let (mt, nt) = (sys.m_tx, sys.n_tx);
    let (mtf, ntf) = (mt as f64, nt as f64);
    let (p_m, p_s) = (sys.p_m, sys.p_s);
    let rho = scn.adc.rho(Phase::Two);
    let eps = scn.adc.eps(Phase::Two);
    let (mu_m2, mu_s2) = precoder_normalization(scn, stats);
    let h_power: f64 = (0..s).map(|j| stats.h(j).entry_power()).sum();

    let mc = (0..s)
        .map(|k| {
            let gk = stats.g(k);
            let theta = scn.fading.g_angle(Phase::Two, k);
            let ici: f64 = others(s, k)
                .map(|j| {
                    let dsq = dirichlet_sq(nt, theta, scn.fading.g_angle(Phase::Two, j));
                    mu_s2[j] * gk.inner_sq(stats.g(j), nt, dsq)
                })
                .sum();
            let est: f64 = (0..s)
                .map(|j| mu_s2[j] * ntf * stats.alpha_tilde[k] * stats.g(j).entry_power())
                .sum();
            let raw = SinrTerms {
                desired: p_s * mu_s2[k] * gk.norm_fourth(nt),
                ici: p_s * ici,
                estimation: p_s * est,
                self_interference: p_m * mu_m2 * intf.zeta2_m[k] * mtf * h_power,
                sc_to_sc: 0.0,
                noise: 1.0,
                quantization: 0.0,
            };
            raw.quantized(rho, raw.unquantized_total())
        })
        .collect();

    let sc = (0..s)
        .map(|k| {
            let hk = stats.h(k);
            let theta = scn.fading.h_angle(Phase::Two, k);
            let ici: f64 = others(s, k)
                .map(|j| {
                    let dsq = dirichlet_sq(mt, theta, scn.fading.h_angle(Phase::Two, j));
                    hk.inner_sq(stats.h(j), mt, dsq)
                })
                .sum();
            let sc2sc: f64 = others(s, k)
                .map(|j| mu_s2[j] * intf.zeta2_c[k][j] * ntf * stats.g(j).entry_power())
                .sum();
            let raw = SinrTerms {
                desired: p_m * mu_m2 * hk.norm_fourth(mt),
                ici: p_m * mu_m2 * ici,
                estimation: p_m * mu_m2 * stats.beta_tilde[k] * mtf * h_power,
                self_interference: p_s
                    * mu_s2[k]
                    * intf.zeta2_s[k]
                    * ntf
                    * stats.g(k).entry_power(),
                sc_to_sc: p_s * sc2sc,
                noise: 1.0,
                quantization: 0.0,
            };
            raw.quantized(eps, raw.unquantized_total())
        })
        .collect();
    (mc, sc)
}

fn closed_form(
    scn: &Scenario,
    stats: &EstimationStats,
    phase: Phase,
    prelog: f64,
) -> Result<RateReport> {
    scn.check(phase)?;
    let (mc, sc) = match phase {
        Phase::One => phase1_terms(scn, stats),
        Phase::Two => phase2_terms(scn, stats),
    };
    Ok(RateReport::from_terms(
        phase,
        Method::Analytic,
        prelog,
        mc,
        sc,
    ))
}

/// Phase-1 SE with MRC at the MC BS and at every SC BS.
pub fn se_phase1(scn: &Scenario, stats: &EstimationStats) -> Result<RateReport> {
    closed_form(scn, stats, Phase::One, scn.system.tau_d())
}

/// Phase-2 SE with MRT precoding at the MC BS and at every SC BS.
pub fn se_phase2(scn: &Scenario, stats: &EstimationStats) -> Result<RateReport> {
    closed_form(scn, stats, Phase::Two, scn.system.tau_d())
}

/// Closed-form SE of `phase`, deriving the estimation statistics.
pub fn se(scn: &Scenario, phase: Phase) -> Result<RateReport> {
    let stats = scn.stats();
    closed_form(scn, &stats, phase, scn.system.tau_d())
}

/// SE as the common Rician K-factor grows without bound.
pub fn limit_k_infinity(scn: &Scenario, phase: Phase) -> Result<RateReport> {
    scn.check(phase)?;
    if scn.fading.common_k().is_none() {
        return Err(Error::HeterogeneousK);
    }
    let sys = &scn.system;
    let f = &scn.fading;
    let intf = &scn.interference;
    let s = sys.small_cells;
    let (p_m, p_s) = (sys.p_m, sys.p_s);
    let rho = scn.adc.rho(phase);
    let eps = scn.adc.eps(phase);
    let sum_beta: f64 = f.beta.iter().sum();
    let sum_alpha: f64 = f.alpha.iter().sum();

    let (mc, sc): (Vec<SinrTerms>, Vec<SinrTerms>) = match phase {
        Phase::One => {
            let (m, n) = (sys.m_rx, sys.n_rx);
            let mc = (0..s)
                .map(|k| {
                    let th = f.h_angle(phase, k);
                    let ici: f64 = others(s, k)
                        .map(|j| f.beta[j] * dirichlet_sq(m, th, f.h_angle(phase, j)))
                        .sum();
                    let si = p_m * intf.sigma2_m * sys.m_tx as f64;
                    SinrTerms {
                        desired: rho * p_s * f.beta[k] * m as f64,
                        ici: rho * p_s * ici / m as f64,
                        estimation: 0.0,
                        self_interference: rho * si,
                        sc_to_sc: 0.0,
                        noise: rho,
                        quantization: (1.0 - rho) * (si + p_s * sum_beta + 1.0),
                    }
                })
                .collect();
            let sc = (0..s)
                .map(|k| {
                    let th = f.g_angle(phase, k);
                    let ici: f64 = others(s, k)
                        .map(|j| f.alpha[j] * dirichlet_sq(n, th, f.g_angle(phase, j)))
                        .sum();
                    let si = p_s * intf.sigma2_s[k];
                    let sc2sc = p_s * intf.sc_to_sc_total(phase, k);
                    SinrTerms {
                        desired: eps * p_m * f.alpha[k] * n as f64,
                        ici: eps * p_m * ici / n as f64,
                        estimation: 0.0,
                        self_interference: eps * si,
                        sc_to_sc: eps * sc2sc,
                        noise: eps,
                        quantization: (1.0 - eps) * (si + sc2sc + p_m * sum_alpha + 1.0),
                    }
                })
                .collect();
            (mc, sc)
        }
        Phase::Two => {
            let (mt, nt) = (sys.m_tx, sys.n_tx);
            let sf = s as f64;
            let mc = (0..s)
                .map(|k| {
                    let th = f.g_angle(phase, k);
                    let psi: f64 = others(s, k)
                        .map(|j| dirichlet_sq(nt, th, f.g_angle(phase, j)))
                        .sum();
                    let t = SinrTerms {
                        desired: rho * p_s * f.alpha[k] * nt as f64,
                        ici: rho * p_s / nt as f64 * f.alpha[k] * psi,
                        estimation: 0.0,
                        self_interference: rho * p_m * intf.zeta2_m[k] * sf,
                        sc_to_sc: 0.0,
                        noise: rho,
                        quantization: 0.0,
                    };
                    SinrTerms {
                        quantization: (1.0 - rho) / rho * t.unquantized_total(),
                        ..t
                    }
                })
                .collect();
            let sc = (0..s)
                .map(|k| {
                    let th = f.h_angle(phase, k);
                    let psi: f64 = others(s, k)
                        .map(|j| f.beta[j] * dirichlet_sq(mt, th, f.h_angle(phase, j)))
                        .sum();
                    let t = SinrTerms {
                        desired: eps * p_m * f.beta[k].powi(2) * mt as f64 * sf,
                        ici: eps * p_m * sf * f.beta[k] / mt as f64 * psi,
                        estimation: 0.0,
                        self_interference: eps * sum_beta * p_s * intf.zeta2_s[k],
                        sc_to_sc: eps * sum_beta * p_s * intf.sc_to_sc_total(phase, k),
                        noise: eps * sum_beta,
                        quantization: 0.0,
                    };
                    SinrTerms {
                        quantization: (1.0 - eps) / eps * t.unquantized_total(),
                        ..t
                    }
                })
                .collect();
            (mc, sc)
        }
    };
    Ok(RateReport::from_terms(
        phase,
        Method::Limit,
        sys.tau_d(),
        mc,
        sc,
    ))
}

/// Transmit powers `p = E / antennas` for the power-scaling regime of `phase`:
/// phase 1 uses `p_m = E_m/N_rx`, `p_s = E_s/M_rx`; phase 2 uses
/// `p_m = E_m/M_tx`, `p_s = E_s/N_tx`.
pub fn with_power_scaling(mut scn: Scenario, phase: Phase, e_m: f64, e_s: f64) -> Scenario {
    let sys = &mut scn.system;
    match phase {
        Phase::One => {
            sys.p_m = e_m / sys.n_rx as f64;
            sys.p_s = e_s / sys.m_rx as f64;
        }
        Phase::Two => {
            sys.p_m = e_m / sys.m_tx as f64;
            sys.p_s = e_s / sys.n_tx as f64;
        }
    }
    scn
}

/// Saturated per-link SE under power scaling with unbounded antennas.
///
/// Phase-1 components are split as `ρ²E_sβ_k / (ρ² + ρ(1−ρ))` so that the
/// QN share stays visible; the ratio is `ρE_sβ_k`.
pub fn power_scaling_limit(
    e_m: f64,
    e_s: f64,
    fading: &FadingProfile,
    adc: &AdcConfig,
    phase: Phase,
    tau_d: f64,
) -> Result<RateReport> {
    if !(e_m > 0.0 && e_s > 0.0) {
        return Err(Error::config("scaled energies must be positive"));
    }
    let rho = adc.rho(phase);
    let eps = adc.eps(phase);
    let s = fading.beta.len();
    let only = |desired: f64, noise: f64, quantization: f64| SinrTerms {
        desired,
        noise,
        quantization,
        ..SinrTerms::default()
    };
    let (mc, sc) = match phase {
        Phase::One => (
            fading
                .beta
                .iter()
                .map(|b| only(rho * rho * e_s * b, rho * rho, rho * (1.0 - rho)))
                .collect(),
            fading
                .alpha
                .iter()
                .map(|a| only(eps * eps * e_m * a, eps * eps, eps * (1.0 - eps)))
                .collect(),
        ),
        Phase::Two => {
            let mean_beta = fading.beta.iter().sum::<f64>() / s as f64;
            (
                fading
                    .alpha
                    .iter()
                    .map(|a| only(rho * e_s * a, 1.0, (1.0 - rho) * e_s * a))
                    .collect(),
                fading
                    .beta
                    .iter()
                    .map(|b| only(eps * e_m * b * b, mean_beta, (1.0 - eps) * e_m * b * b))
                    .collect(),
            )
        }
    };
    Ok(RateReport::from_terms(phase, Method::Limit, tau_d, mc, sc))
}

/// Half-duplex baseline: no SI or SC-to-SC interference, doubled data
/// powers (pilot power unchanged) and half the pre-log factor.
pub fn se_half_duplex(scn: &Scenario, stats: &EstimationStats, phase: Phase) -> Result<RateReport> {
    let hd = half_duplex_scenario(scn);
    closed_form(&hd, stats, phase, scn.system.tau_d() / 2.0)
}

pub fn half_duplex_scenario(scn: &Scenario) -> Scenario {
    let mut hd = scn.clone();
    hd.interference = crate::params::InterferenceProfile::zero(scn.system.small_cells);
    hd.system.p_m *= 2.0;
    hd.system.p_s *= 2.0;
    hd
}

/// First phase-1 MC array size in `grid` at which the FD sum SE exceeds the
/// HD sum SE, with `N_rx = max(1, round(sc_ratio·M_rx))`.
///
/// The scan stops at the first crossing; that the difference stays positive
/// afterwards is observed behaviour, not a proven property.
pub fn fd_hd_crossover(
    scn: &Scenario,
    grid: impl IntoIterator<Item = usize>,
    sc_ratio: f64,
) -> Result<Option<usize>> {
    for m in grid {
        let n = ((sc_ratio * m as f64).round() as usize).max(1);
        let point = scn.clone().with_phase1_antennas(m, n);
        let stats = point.stats();
        let fd = se_phase1(&point, &stats)?.sum_se_total();
        let hd = se_half_duplex(&point, &stats, Phase::One)?.sum_se_total();
        if fd > hd {
            return Ok(Some(m));
        }
    }
    Ok(None)
}
