//! Scenario configuration and the derived per-link statistics.
//!
//! All powers are stored in linear units with the thermal noise power
//! normalized to one, so `p_m` doubles as the SNR. Conversion from dB happens
//! only in [`ScenarioFile`].

mod file;

use std::f64::consts::PI;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub use file::{DbValue, PerCell, PerPair, ScenarioFile};

pub fn db_to_linear(db: f64) -> f64 {
    10f64.powf(db / 10.0)
}

pub fn linear_to_db(x: f64) -> f64 {
    10.0 * x.log10()
}

/// Transmission phase of the two-phase backhaul frame.
///
/// In phase 1 the MC BS receives with a massive array and transmits with one
/// antenna per small cell; in phase 2 the roles of the arrays are swapped.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "u8", into = "u8")]
pub enum Phase {
    One,
    Two,
}

impl Phase {
    pub const BOTH: [Phase; 2] = [Phase::One, Phase::Two];

    pub fn index(self) -> u8 {
        match self {
            Phase::One => 1,
            Phase::Two => 2,
        }
    }
}

impl fmt::Display for Phase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.index())
    }
}

impl TryFrom<u8> for Phase {
    type Error = Error;

    fn try_from(v: u8) -> Result<Self> {
        match v {
            1 => Ok(Phase::One),
            2 => Ok(Phase::Two),
            other => Err(Error::config(format!("phase must be 1 or 2, got {other}"))),
        }
    }
}

impl From<Phase> for u8 {
    fn from(p: Phase) -> u8 {
        p.index()
    }
}

/// ADC resolution: a positive number of bits, or an ideal converter.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Bits {
    Finite(u32),
    Infinite,
}

impl Bits {
    pub fn new(b: i64) -> Result<Self> {
        if b < 1 || b > u32::MAX as i64 {
            return Err(Error::InvalidBits(b));
        }
        Ok(Bits::Finite(b as u32))
    }

    pub fn finite(self) -> Option<u32> {
        match self {
            Bits::Finite(b) => Some(b),
            Bits::Infinite => None,
        }
    }

    pub fn is_infinite(self) -> bool {
        matches!(self, Bits::Infinite)
    }
}

impl fmt::Display for Bits {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Bits::Finite(b) => write!(f, "{b}"),
            Bits::Infinite => f.write_str("inf"),
        }
    }
}

impl std::str::FromStr for Bits {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "inf" | "infinite" | "Inf" | "∞" => Ok(Bits::Infinite),
            other => {
                let b: i64 = other
                    .parse()
                    .map_err(|_| Error::Parse(format!("invalid bit count {other:?}")))?;
                Bits::new(b)
            }
        }
    }
}

impl Serialize for Bits {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            Bits::Finite(b) => s.serialize_u32(*b),
            Bits::Infinite => s.serialize_str("inf"),
        }
    }
}

impl<'de> Deserialize<'de> for Bits {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Raw {
            Int(i64),
            Float(f64),
            Str(String),
        }
        let raw = Raw::deserialize(d)?;
        let bits = match raw {
            Raw::Int(b) => Bits::new(b),
            Raw::Float(f) if f.is_infinite() && f > 0.0 => Ok(Bits::Infinite),
            Raw::Float(f) if f.fract() == 0.0 => Bits::new(f as i64),
            Raw::Float(f) => Err(Error::Parse(format!("invalid bit count {f}"))),
            Raw::Str(s) => s.parse(),
        };
        bits.map_err(serde::de::Error::custom)
    }
}

/// Distortion factor κ of a b-bit quantizer under the additive quantization
/// noise model.
///
/// Resolutions of 1–5 bits use tabulated values; beyond that the high-resolution
/// approximation `(π√3/2)·2^(−2b)` applies.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct KappaTable {
    table: [f64; 5],
}

impl KappaTable {
    pub const STANDARD: KappaTable = KappaTable {
        table: [0.3634, 0.1175, 0.03454, 0.009497, 0.002499],
    };

    /// Replaces the tabulated value for `bits` (1..=5).
    pub fn with_entry(mut self, bits: u32, kappa: f64) -> Result<Self> {
        if !(1..=5).contains(&bits) {
            return Err(Error::config(format!(
                "only 1..=5 bits are tabulated, got {bits}"
            )));
        }
        if !(0.0..1.0).contains(&kappa) {
            return Err(Error::InvalidDistortion(kappa));
        }
        self.table[bits as usize - 1] = kappa;
        Ok(self)
    }

    pub fn kappa(&self, bits: Bits) -> f64 {
        match bits {
            Bits::Infinite => 0.0,
            Bits::Finite(b @ 1..=5) => self.table[b as usize - 1],
            Bits::Finite(b) => PI * 3f64.sqrt() / 2.0 * 2f64.powi(-2 * b.min(512) as i32),
        }
    }

    /// `1 − κ`, the linear gain ρ (or ε) applied to the quantizer input.
    pub fn rho(&self, bits: Bits) -> f64 {
        1.0 - self.kappa(bits)
    }
}

impl Default for KappaTable {
    fn default() -> Self {
        KappaTable::STANDARD
    }
}

/// κ from the standard table.
pub fn kappa(bits: Bits) -> f64 {
    KappaTable::STANDARD.kappa(bits)
}

/// Antenna counts, frame timing and transmit powers.
///
/// One configuration describes a single phase: phase 1 requires `m_tx == s`
/// and `n_tx == 1`, phase 2 requires `m_rx == s` and `n_rx == 1`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SystemConfig {
    pub small_cells: usize,
    pub m_rx: usize,
    pub m_tx: usize,
    pub n_rx: usize,
    pub n_tx: usize,
    /// Coherence interval T in symbols.
    pub coherence: usize,
    /// Pilot length τ_p in symbols.
    pub pilot_len: usize,
    pub p_m: f64,
    pub p_s: f64,
    pub p_tau: f64,
}

impl SystemConfig {
    pub fn validate(&self) -> Result<()> {
        let s = self.small_cells;
        if s == 0 {
            return Err(Error::config("at least one small cell is required"));
        }
        if self.pilot_len < 2 * s {
            return Err(Error::config(format!(
                "pilot length {} is shorter than 2S = {}",
                self.pilot_len,
                2 * s
            )));
        }
        if self.coherence <= self.pilot_len {
            return Err(Error::config(format!(
                "coherence interval {} must exceed pilot length {}",
                self.coherence, self.pilot_len
            )));
        }
        for (name, v) in [("p_m", self.p_m), ("p_s", self.p_s), ("p_tau", self.p_tau)] {
            if !(v > 0.0 && v.is_finite()) {
                return Err(Error::config(format!("{name} must be positive, got {v}")));
            }
        }
        for (name, v) in [
            ("m_rx", self.m_rx),
            ("m_tx", self.m_tx),
            ("n_rx", self.n_rx),
            ("n_tx", self.n_tx),
        ] {
            if v == 0 {
                return Err(Error::config(format!("{name} must be at least 1")));
            }
        }
        Ok(())
    }

    /// Checks the per-phase antenna role constraints.
    pub fn check_roles(&self, phase: Phase) -> Result<()> {
        let s = self.small_cells;
        match phase {
            Phase::One => {
                if self.m_tx != s {
                    return Err(Error::roles(
                        phase,
                        format!("M_tx = {} != S = {s}", self.m_tx),
                    ));
                }
                if self.n_tx != 1 {
                    return Err(Error::roles(phase, format!("N_tx = {} != 1", self.n_tx)));
                }
            }
            Phase::Two => {
                if self.m_rx != s {
                    return Err(Error::roles(
                        phase,
                        format!("M_rx = {} != S = {s}", self.m_rx),
                    ));
                }
                if self.n_rx != 1 {
                    return Err(Error::roles(phase, format!("N_rx = {} != 1", self.n_rx)));
                }
            }
        }
        Ok(())
    }

    /// Infers the phase from the antenna roles, preferring phase 1 when both fit.
    pub fn phase(&self) -> Option<Phase> {
        Phase::BOTH
            .into_iter()
            .find(|&p| self.check_roles(p).is_ok())
    }

    /// Effective pre-log factor τ_d = (T − τ_p) / 2T.
    pub fn tau_d(&self) -> f64 {
        (self.coherence - self.pilot_len) as f64 / (2.0 * self.coherence as f64)
    }

    /// Length of the massive array used by the MC BS in `phase`.
    pub fn mc_array(&self, phase: Phase) -> usize {
        match phase {
            Phase::One => self.m_rx,
            Phase::Two => self.m_tx,
        }
    }

    /// Length of the massive array used by each SC BS in `phase`.
    pub fn sc_array(&self, phase: Phase) -> usize {
        match phase {
            Phase::One => self.n_rx,
            Phase::Two => self.n_tx,
        }
    }
}

/// Large-scale gains, Rician K-factors and LoS angles, one entry per small cell.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FadingProfile {
    /// Gain of the SC-k ↔ MC BS link carried by `H`.
    pub beta: Vec<f64>,
    /// Gain of the MC BS ↔ SC-k link carried by `g_k`.
    pub alpha: Vec<f64>,
    pub k_m: Vec<f64>,
    pub k_s: Vec<f64>,
    /// Phase-1 angles of arrival at the MC BS (`H`) and at SC-k (`g_k`).
    pub aoa_m: Vec<f64>,
    pub aoa_s: Vec<f64>,
    /// Phase-2 angles: `aoa2_m` steers `g_k`, `aoa2_s` steers `h_k`.
    pub aoa2_m: Vec<f64>,
    pub aoa2_s: Vec<f64>,
}

/// Evenly spaced angles `−π/2 + π(k − 1/2)/S`, k = 1..S.
pub fn uniform_angles(s: usize) -> Vec<f64> {
    (0..s)
        .map(|k| -PI / 2.0 + PI * (k as f64 + 0.5) / s as f64)
        .collect()
}

impl FadingProfile {
    pub fn homogeneous(s: usize, beta: f64, alpha: f64, k_m: f64, k_s: f64) -> Self {
        let angles = uniform_angles(s);
        FadingProfile {
            beta: vec![beta; s],
            alpha: vec![alpha; s],
            k_m: vec![k_m; s],
            k_s: vec![k_s; s],
            aoa_m: angles.clone(),
            aoa_s: angles.clone(),
            aoa2_m: angles.clone(),
            aoa2_s: angles,
        }
    }

    pub fn validate(&self, s: usize) -> Result<()> {
        let vectors: [(&str, &Vec<f64>); 8] = [
            ("beta", &self.beta),
            ("alpha", &self.alpha),
            ("k_m", &self.k_m),
            ("k_s", &self.k_s),
            ("aoa_m", &self.aoa_m),
            ("aoa_s", &self.aoa_s),
            ("aoa2_m", &self.aoa2_m),
            ("aoa2_s", &self.aoa2_s),
        ];
        for (name, v) in vectors {
            if v.len() != s {
                return Err(Error::config(format!(
                    "{name} has {} entries, expected {s}",
                    v.len()
                )));
            }
        }
        for (name, v) in [("beta", &self.beta), ("alpha", &self.alpha)] {
            if let Some(x) = v.iter().find(|x| !(**x > 0.0 && x.is_finite())) {
                return Err(Error::config(format!("{name} must be positive, got {x}")));
            }
        }
        for (name, v) in [("k_m", &self.k_m), ("k_s", &self.k_s)] {
            if let Some(x) = v.iter().find(|x| !(**x >= 0.0 && x.is_finite())) {
                return Err(Error::config(format!(
                    "{name} must be finite and non-negative, got {x}"
                )));
            }
        }
        for (name, v) in [
            ("aoa_m", &self.aoa_m),
            ("aoa_s", &self.aoa_s),
            ("aoa2_m", &self.aoa2_m),
            ("aoa2_s", &self.aoa2_s),
        ] {
            if let Some(x) = v.iter().find(|x| !(-PI / 2.0..PI / 2.0).contains(*x)) {
                return Err(Error::config(format!(
                    "{name} entries must lie in [-pi/2, pi/2), got {x}"
                )));
            }
        }
        Ok(())
    }

    /// Common K-factor, if every link of both channel families shares one.
    pub fn common_k(&self) -> Option<f64> {
        let first = *self.k_m.first()?;
        self.k_m
            .iter()
            .chain(&self.k_s)
            .all(|&k| k == first)
            .then_some(first)
    }

    /// LoS angle of `h_k` for the given phase.
    pub fn h_angle(&self, phase: Phase, k: usize) -> f64 {
        match phase {
            Phase::One => self.aoa_m[k],
            Phase::Two => self.aoa2_s[k],
        }
    }

    /// LoS angle of `g_k` for the given phase.
    pub fn g_angle(&self, phase: Phase, k: usize) -> f64 {
        match phase {
            Phase::One => self.aoa_s[k],
            Phase::Two => self.aoa2_m[k],
        }
    }

    pub fn set_common_k(&mut self, k: f64) {
        self.k_m
            .iter_mut()
            .chain(self.k_s.iter_mut())
            .for_each(|x| *x = k);
    }
}

/// Residual self-interference and SC-to-SC interference variances.
///
/// Matrix entries are indexed `[k][j]` (from SC-j into SC-k); the diagonal is
/// ignored.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct InterferenceProfile {
    pub sigma2_m: f64,
    pub sigma2_s: Vec<f64>,
    pub sigma2_c: Vec<Vec<f64>>,
    pub zeta2_m: Vec<f64>,
    pub zeta2_s: Vec<f64>,
    pub zeta2_c: Vec<Vec<f64>>,
}

impl InterferenceProfile {
    pub fn homogeneous(s: usize, si: f64, sc: f64) -> Self {
        InterferenceProfile {
            sigma2_m: si,
            sigma2_s: vec![si; s],
            sigma2_c: vec![vec![sc; s]; s],
            zeta2_m: vec![si; s],
            zeta2_s: vec![si; s],
            zeta2_c: vec![vec![sc; s]; s],
        }
    }

    /// Interference-free profile, used by the half-duplex baseline.
    pub fn zero(s: usize) -> Self {
        Self::homogeneous(s, 0.0, 0.0)
    }

    pub fn validate(&self, s: usize) -> Result<()> {
        let check = |name: &str, v: f64| -> Result<()> {
            if v >= 0.0 && v.is_finite() {
                Ok(())
            } else {
                Err(Error::config(format!(
                    "{name} must be non-negative, got {v}"
                )))
            }
        };
        check("sigma2_m", self.sigma2_m)?;
        for (name, v) in [
            ("sigma2_s", &self.sigma2_s),
            ("zeta2_m", &self.zeta2_m),
            ("zeta2_s", &self.zeta2_s),
        ] {
            if v.len() != s {
                return Err(Error::config(format!(
                    "{name} has {} entries, expected {s}",
                    v.len()
                )));
            }
            v.iter().try_for_each(|&x| check(name, x))?;
        }
        for (name, m) in [("sigma2_c", &self.sigma2_c), ("zeta2_c", &self.zeta2_c)] {
            if m.len() != s || m.iter().any(|row| row.len() != s) {
                return Err(Error::config(format!("{name} must be a {s}x{s} matrix")));
            }
            for (k, row) in m.iter().enumerate() {
                for (j, &x) in row.iter().enumerate() {
                    if j != k {
                        check(name, x)?;
                    }
                }
            }
        }
        Ok(())
    }

    /// Total SC-to-SC interference variance seen by SC-k, Σ_{j≠k}.
    pub fn sc_to_sc_total(&self, phase: Phase, k: usize) -> f64 {
        let m = match phase {
            Phase::One => &self.sigma2_c,
            Phase::Two => &self.zeta2_c,
        };
        m[k].iter()
            .enumerate()
            .filter(|&(j, _)| j != k)
            .map(|(_, x)| x)
            .sum()
    }
}

/// Quantization resolution of every receiver class.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AdcConfig {
    pub b_m1: Bits,
    pub b_s1: Bits,
    pub b_m2: Bits,
    pub b_s2: Bits,
    #[serde(default)]
    pub table: KappaTable,
}

impl AdcConfig {
    pub fn uniform(bits: Bits) -> Self {
        AdcConfig {
            b_m1: bits,
            b_s1: bits,
            b_m2: bits,
            b_s2: bits,
            table: KappaTable::STANDARD,
        }
    }

    pub fn ideal() -> Self {
        Self::uniform(Bits::Infinite)
    }

    /// ρ at the MC BS receiver in `phase`.
    pub fn rho(&self, phase: Phase) -> f64 {
        match phase {
            Phase::One => self.table.rho(self.b_m1),
            Phase::Two => self.table.rho(self.b_m2),
        }
    }

    /// ε at the SC BS receivers in `phase`.
    pub fn eps(&self, phase: Phase) -> f64 {
        match phase {
            Phase::One => self.table.rho(self.b_s1),
            Phase::Two => self.table.rho(self.b_s2),
        }
    }
}

/// Statistics of one Rician link and its MMSE estimate.
///
/// With `ξ = β/(K+1)`, the estimate has a LoS mean of amplitude `√(ξK)` per
/// entry plus scattering of variance `ξη`; the estimation error has variance
/// `ξ(1−η)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RicianStats {
    pub gain: f64,
    pub k: f64,
    pub quality: f64,
}

impl RicianStats {
    pub fn xi(&self) -> f64 {
        self.gain / (self.k + 1.0)
    }

    pub fn hat_var(&self) -> f64 {
        self.xi() * self.quality
    }

    pub fn err_var(&self) -> f64 {
        self.xi() * (1.0 - self.quality)
    }

    pub fn los_amplitude(&self) -> f64 {
        (self.xi() * self.k).sqrt()
    }

    /// `E[|ĥ_n|²]`.
    pub fn entry_power(&self) -> f64 {
        self.xi() * (self.k + self.quality)
    }

    /// `E[|ĥ_n|⁴]`.
    pub fn entry_fourth(&self) -> f64 {
        let (k, q) = (self.k, self.quality);
        self.xi().powi(2) * (k * k + 4.0 * k * q + 2.0 * q * q)
    }

    /// `E[‖ĥ‖⁴]` for an `n`-antenna estimate.
    pub fn norm_fourth(&self, n: usize) -> f64 {
        let (k, q, n) = (self.k, self.quality, n as f64);
        self.xi().powi(2) * n * (n * k * k + q * (1.0 + n) * (2.0 * k + q))
    }

    /// `E[|ĥ_k^H ĥ_j|²]` for independent `n`-antenna estimates whose LoS
    /// steering vectors have squared inner product `dsq`.
    pub fn inner_sq(&self, other: &RicianStats, n: usize, dsq: f64) -> f64 {
        self.xi() * other.xi() * (self.k * other.k * dsq + n as f64 * self.mixed(other))
    }

    /// `K_k η_j + K_j η_k + η_k η_j`, the scattered part of the cross moment.
    pub fn mixed(&self, other: &RicianStats) -> f64 {
        self.k * other.quality + other.k * self.quality + self.quality * other.quality
    }
}

/// Per-link MMSE estimation quality and the estimate/error variances.
#[derive(Debug, Clone, PartialEq)]
pub struct EstimationStats {
    pub eta: Vec<f64>,
    pub eps: Vec<f64>,
    pub xi: Vec<f64>,
    pub beta_hat: Vec<f64>,
    pub beta_tilde: Vec<f64>,
    pub alpha_xi: Vec<f64>,
    pub alpha_hat: Vec<f64>,
    pub alpha_tilde: Vec<f64>,
    h: Vec<RicianStats>,
    g: Vec<RicianStats>,
}

impl EstimationStats {
    pub fn h(&self, k: usize) -> &RicianStats {
        &self.h[k]
    }

    pub fn g(&self, k: usize) -> &RicianStats {
        &self.g[k]
    }

    pub fn len(&self) -> usize {
        self.h.len()
    }

    pub fn is_empty(&self) -> bool {
        self.h.is_empty()
    }
}

fn estimation_quality(pilot_energy: f64, gain: f64) -> f64 {
    pilot_energy * gain / (1.0 + pilot_energy * gain)
}

pub fn derive_estimation_stats(cfg: &SystemConfig, fading: &FadingProfile) -> EstimationStats {
    let pilot_energy = cfg.pilot_len as f64 * cfg.p_tau;
    let s = fading.beta.len();
    let h: Vec<RicianStats> = (0..s)
        .map(|k| RicianStats {
            gain: fading.beta[k],
            k: fading.k_m[k],
            quality: estimation_quality(pilot_energy, fading.beta[k]),
        })
        .collect();
    let g: Vec<RicianStats> = (0..s)
        .map(|k| RicianStats {
            gain: fading.alpha[k],
            k: fading.k_s[k],
            quality: estimation_quality(pilot_energy, fading.alpha[k]),
        })
        .collect();
    EstimationStats {
        eta: h.iter().map(|l| l.quality).collect(),
        eps: g.iter().map(|l| l.quality).collect(),
        xi: h.iter().map(RicianStats::xi).collect(),
        beta_hat: h.iter().map(RicianStats::hat_var).collect(),
        beta_tilde: h.iter().map(RicianStats::err_var).collect(),
        alpha_xi: g.iter().map(RicianStats::xi).collect(),
        alpha_hat: g.iter().map(RicianStats::hat_var).collect(),
        alpha_tilde: g.iter().map(RicianStats::err_var).collect(),
        h,
        g,
    }
}

/// Everything needed to evaluate one phase of the backhaul.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Scenario {
    pub system: SystemConfig,
    pub fading: FadingProfile,
    pub interference: InterferenceProfile,
    pub adc: AdcConfig,
}

impl Scenario {
    pub fn validate(&self) -> Result<()> {
        self.system.validate()?;
        let s = self.system.small_cells;
        self.fading.validate(s)?;
        self.interference.validate(s)?;
        Ok(())
    }

    pub fn stats(&self) -> EstimationStats {
        derive_estimation_stats(&self.system, &self.fading)
    }

    /// Validates the scenario and the antenna roles of `phase`.
    pub fn check(&self, phase: Phase) -> Result<()> {
        self.validate()?;
        self.system.check_roles(phase)
    }

    /// Phase-1 roles: `m_rx`/`n_rx` receive antennas, `M_tx = S`, `N_tx = 1`.
    pub fn with_phase1_antennas(mut self, m_rx: usize, n_rx: usize) -> Self {
        self.system.m_rx = m_rx;
        self.system.n_rx = n_rx;
        self.system.m_tx = self.system.small_cells;
        self.system.n_tx = 1;
        self
    }

    /// Phase-2 roles: `m_tx`/`n_tx` transmit antennas, `M_rx = S`, `N_rx = 1`.
    pub fn with_phase2_antennas(mut self, m_tx: usize, n_tx: usize) -> Self {
        self.system.m_tx = m_tx;
        self.system.n_tx = n_tx;
        self.system.m_rx = self.system.small_cells;
        self.system.n_rx = 1;
        self
    }

    /// Sets the massive arrays of `phase` and the matching fixed roles.
    pub fn with_antennas(self, phase: Phase, mc: usize, sc: usize) -> Self {
        match phase {
            Phase::One => self.with_phase1_antennas(mc, sc),
            Phase::Two => self.with_phase2_antennas(mc, sc),
        }
    }

    pub fn with_bits(mut self, bits: Bits) -> Self {
        let table = self.adc.table;
        self.adc = AdcConfig {
            table,
            ..AdcConfig::uniform(bits)
        };
        self
    }

    pub fn with_common_k(mut self, k: f64) -> Self {
        self.fading.set_common_k(k);
        self
    }

    /// Sets `p_m = p_s` (the SNR) in linear units.
    pub fn with_tx_power(mut self, p: f64) -> Self {
        self.system.p_m = p;
        self.system.p_s = p;
        self
    }
}

impl Default for Scenario {
    fn default() -> Self {
        default_scenario()
    }
}

/// Reference operating point: S = 6, β = α = 0.2, SI variances 0.3, SC-to-SC
/// variances 0.2, all powers 10 dB, T = 200, τ_p = 2S, K = 0 dB, 3-bit ADCs,
/// and phase-1 arrays of 200 (MC) and 100 (SC) receive antennas.
pub fn default_scenario() -> Scenario {
    ScenarioFile::default()
        .build()
        .expect("built-in default scenario is valid")
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn kappa_table_values() {
        assert_eq!(kappa(Bits::Finite(2)), 0.1175);
        assert_eq!(kappa(Bits::Infinite), 0.0);
        assert_relative_eq!(kappa(Bits::Finite(6)), 6.6423e-4, max_relative = 1e-4);
    }

    #[test]
    fn kappa_strictly_decreasing() {
        let mut prev = 1.0;
        for b in 1..=20 {
            let k = kappa(Bits::Finite(b));
            assert!(k < prev, "kappa({b}) = {k} not below {prev}");
            assert!(1.0 - k > 0.0 && 1.0 - k <= 1.0);
            prev = k;
        }
        assert!(kappa(Bits::Infinite) < prev);
    }

    #[test]
    fn bits_rejects_non_positive() {
        assert!(matches!(Bits::new(0), Err(Error::InvalidBits(0))));
        assert!(matches!(Bits::new(-3), Err(Error::InvalidBits(-3))));
        assert_eq!("inf".parse::<Bits>().unwrap(), Bits::Infinite);
        assert_eq!("4".parse::<Bits>().unwrap(), Bits::Finite(4));
    }

    #[test]
    fn estimation_stats_examples() {
        let mut cfg = default_scenario().system;
        cfg.pilot_len = 12;
        cfg.p_tau = 10.0;
        let fading = FadingProfile::homogeneous(6, 0.2, 0.2, 1.0, 1.0);
        let st = derive_estimation_stats(&cfg, &fading);
        assert_relative_eq!(st.eta[0], 0.96, epsilon = 1e-15);
        assert_relative_eq!(st.beta_hat[0], 0.096, epsilon = 1e-15);
        assert_relative_eq!(st.eps[3], 0.96, epsilon = 1e-15);
    }

    #[test]
    fn mmse_orthogonality() {
        let cfg = default_scenario().system;
        let fading = FadingProfile {
            beta: vec![0.1, 0.5, 2.0, 0.01, 0.3, 1.0],
            k_m: vec![0.0, 1.0, 3.0, 10.0, 0.5, 100.0],
            ..FadingProfile::homogeneous(6, 0.2, 0.2, 1.0, 1.0)
        };
        let st = derive_estimation_stats(&cfg, &fading);
        for k in 0..6 {
            let xi = fading.beta[k] / (fading.k_m[k] + 1.0);
            assert_relative_eq!(st.beta_hat[k] + st.beta_tilde[k], xi, max_relative = 1e-15);
            assert_relative_eq!(st.xi[k], xi, max_relative = 1e-15);
            assert!(st.eta[k] > 0.0 && st.eta[k] < 1.0);
            assert_relative_eq!(
                st.alpha_hat[k] + st.alpha_tilde[k],
                fading.alpha[k] / (fading.k_s[k] + 1.0),
                max_relative = 1e-15
            );
        }
    }

    #[test]
    fn perfect_pilots_kill_error_variance() {
        let mut cfg = default_scenario().system;
        cfg.p_tau = 1e15;
        let st = derive_estimation_stats(&cfg, &FadingProfile::homogeneous(6, 0.2, 0.2, 1.0, 1.0));
        assert!(st.beta_tilde.iter().all(|&b| b < 1e-15));
    }

    #[test]
    fn default_scenario_values() {
        let scn = default_scenario();
        assert_relative_eq!(scn.system.tau_d(), 0.47, epsilon = 1e-15);
        assert_eq!(scn.interference.sigma2_c[0][1], 0.2);
        assert_eq!(scn.fading.k_m[0], 1.0);
        assert_relative_eq!(scn.system.p_m, 10.0, epsilon = 1e-12);
        assert_eq!(scn.system.small_cells, 6);
        assert_eq!(scn.system.pilot_len, 12);
        assert!(scn.check(Phase::One).is_ok());
        assert!(scn.check(Phase::Two).is_err());
    }

    #[test]
    fn tau_d_in_open_half_interval() {
        for t in 13..400 {
            let cfg = SystemConfig {
                coherence: t,
                ..default_scenario().system
            };
            let td = cfg.tau_d();
            assert!(td > 0.0 && td < 0.5);
        }
    }

    #[test]
    fn rejects_short_pilots_and_bad_powers() {
        let mut cfg = default_scenario().system;
        cfg.pilot_len = 11;
        assert!(cfg.validate().is_err());
        let mut cfg = default_scenario().system;
        cfg.coherence = 12;
        assert!(cfg.validate().is_err());
        let mut cfg = default_scenario().system;
        cfg.p_s = 0.0;
        assert!(cfg.validate().is_err());
    }

    #[test]
    fn phase_roles() {
        let p2 = default_scenario().with_phase2_antennas(128, 64);
        assert!(p2.check(Phase::Two).is_ok());
        assert!(matches!(
            p2.check(Phase::One),
            Err(Error::RoleMismatch { .. })
        ));
        assert_eq!(p2.system.phase(), Some(Phase::Two));
    }

    #[test]
    fn uniform_angles_distinct_and_in_range() {
        let a = uniform_angles(6);
        assert!(a.windows(2).all(|w| w[0] < w[1]));
        assert!(a.iter().all(|x| (-PI / 2.0..PI / 2.0).contains(x)));
        assert_relative_eq!(a[0], -PI / 2.0 + PI / 12.0);
    }

    #[test]
    fn common_k_detects_heterogeneity() {
        let mut f = FadingProfile::homogeneous(3, 0.2, 0.2, 4.0, 4.0);
        assert_eq!(f.common_k(), Some(4.0));
        f.k_s[1] = 2.0;
        assert_eq!(f.common_k(), None);
    }
}
