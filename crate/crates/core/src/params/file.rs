//! Declarative scenario files.
//!
//! A scenario file is TOML with one section per configuration type. Powers and
//! K-factors are written in dB; per-cell quantities accept either a scalar
//! (applied to every cell) or a list with one entry per cell.
//!
//! ```toml
//! [system]
//! small_cells = 6
//! m_rx = 256
//! n_rx = 128
//! p_m_db = 10.0
//!
//! [fading]
//! beta = 0.2
//! k_m_db = [0.0, 0.0, 3.0, 3.0, -inf, -inf]
//!
//! [adc]
//! b_m1 = 2
//! b_s1 = "inf"
//! ```

use std::path::Path;

use serde::{Deserialize, Serialize};

use super::{
    db_to_linear, uniform_angles, AdcConfig, Bits, FadingProfile, InterferenceProfile, KappaTable,
    Scenario, SystemConfig,
};
use crate::error::{Error, Result};

/// A dB quantity. `-inf` (Rayleigh K-factor) survives JSON round trips as a string.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DbValue(pub f64);

impl DbValue {
    pub fn linear(self) -> f64 {
        if self.0 == f64::NEG_INFINITY {
            0.0
        } else {
            db_to_linear(self.0)
        }
    }
}

impl Serialize for DbValue {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        if self.0.is_finite() {
            s.serialize_f64(self.0)
        } else if self.0 < 0.0 {
            s.serialize_str("-inf")
        } else {
            s.serialize_str("inf")
        }
    }
}

impl<'de> Deserialize<'de> for DbValue {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Raw {
            Num(f64),
            Str(String),
        }
        match Raw::deserialize(d)? {
            Raw::Num(x) => Ok(DbValue(x)),
            Raw::Str(s) => match s.trim() {
                "-inf" | "-infinity" => Ok(DbValue(f64::NEG_INFINITY)),
                "inf" | "infinity" => Ok(DbValue(f64::INFINITY)),
                other => other
                    .parse()
                    .map(DbValue)
                    .map_err(|_| serde::de::Error::custom(format!("invalid dB value {other:?}"))),
            },
        }
    }
}

/// A scalar shared by every cell, or one value per cell.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum PerCell<T> {
    All(T),
    Each(Vec<T>),
}

impl<T: Copy> PerCell<T> {
    fn expand(&self, s: usize, name: &str) -> Result<Vec<T>> {
        match self {
            PerCell::All(x) => Ok(vec![*x; s]),
            PerCell::Each(v) if v.len() == s => Ok(v.clone()),
            PerCell::Each(v) => Err(Error::config(format!(
                "{name} has {} entries, expected {s}",
                v.len()
            ))),
        }
    }
}

/// A scalar shared by every ordered cell pair, or a full S×S matrix.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum PerPair {
    All(f64),
    Each(Vec<Vec<f64>>),
}

impl PerPair {
    fn expand(&self, s: usize, name: &str) -> Result<Vec<Vec<f64>>> {
        match self {
            PerPair::All(x) => Ok(vec![vec![*x; s]; s]),
            PerPair::Each(m) if m.len() == s && m.iter().all(|r| r.len() == s) => Ok(m.clone()),
            PerPair::Each(_) => Err(Error::config(format!("{name} must be a {s}x{s} matrix"))),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct SystemSection {
    pub small_cells: usize,
    pub m_rx: usize,
    /// Defaults to `small_cells` (phase-1 role).
    pub m_tx: Option<usize>,
    pub n_rx: usize,
    /// Defaults to 1 (phase-1 role).
    pub n_tx: Option<usize>,
    pub coherence: usize,
    /// Defaults to `2 * small_cells`.
    pub pilot_len: Option<usize>,
    pub p_m_db: f64,
    pub p_s_db: f64,
    pub p_tau_db: f64,
}

impl Default for SystemSection {
    fn default() -> Self {
        SystemSection {
            small_cells: 6,
            m_rx: 200,
            m_tx: None,
            n_rx: 100,
            n_tx: None,
            coherence: 200,
            pilot_len: None,
            p_m_db: 10.0,
            p_s_db: 10.0,
            p_tau_db: 10.0,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct FadingSection {
    pub beta: PerCell<f64>,
    pub alpha: PerCell<f64>,
    pub k_m_db: PerCell<DbValue>,
    pub k_s_db: PerCell<DbValue>,
    /// Angles in radians; absent lists default to uniform spacing.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub aoa_m: Option<Vec<f64>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub aoa_s: Option<Vec<f64>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub aoa2_m: Option<Vec<f64>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub aoa2_s: Option<Vec<f64>>,
}

impl Default for FadingSection {
    fn default() -> Self {
        FadingSection {
            beta: PerCell::All(0.2),
            alpha: PerCell::All(0.2),
            k_m_db: PerCell::All(DbValue(0.0)),
            k_s_db: PerCell::All(DbValue(0.0)),
            aoa_m: None,
            aoa_s: None,
            aoa2_m: None,
            aoa2_s: None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct InterferenceSection {
    pub sigma2_m: f64,
    pub sigma2_s: PerCell<f64>,
    pub sigma2_c: PerPair,
    pub zeta2_m: PerCell<f64>,
    pub zeta2_s: PerCell<f64>,
    pub zeta2_c: PerPair,
}

impl Default for InterferenceSection {
    fn default() -> Self {
        InterferenceSection {
            sigma2_m: 0.3,
            sigma2_s: PerCell::All(0.3),
            sigma2_c: PerPair::All(0.2),
            zeta2_m: PerCell::All(0.3),
            zeta2_s: PerCell::All(0.3),
            zeta2_c: PerPair::All(0.2),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct AdcSection {
    pub b_m1: Bits,
    pub b_s1: Bits,
    pub b_m2: Bits,
    pub b_s2: Bits,
}

impl Default for AdcSection {
    fn default() -> Self {
        let b = Bits::Finite(3);
        AdcSection {
            b_m1: b,
            b_s1: b,
            b_m2: b,
            b_s2: b,
        }
    }
}

/// The file-facing form of a [`Scenario`].
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct ScenarioFile {
    pub system: SystemSection,
    pub fading: FadingSection,
    pub interference: InterferenceSection,
    pub adc: AdcSection,
}

impl ScenarioFile {
    pub fn from_toml_str(s: &str) -> Result<Self> {
        toml::from_str(s).map_err(|e| Error::Parse(e.to_string()))
    }

    pub fn from_path(path: impl AsRef<Path>) -> Result<Self> {
        Self::from_toml_str(&std::fs::read_to_string(path)?)
    }

    pub fn to_toml_string(&self) -> Result<String> {
        toml::to_string(self).map_err(|e| Error::Parse(e.to_string()))
    }

    /// Converts to linear units and validates.
    pub fn build(&self) -> Result<Scenario> {
        let sys = &self.system;
        let s = sys.small_cells;
        let system = SystemConfig {
            small_cells: s,
            m_rx: sys.m_rx,
            m_tx: sys.m_tx.unwrap_or(s),
            n_rx: sys.n_rx,
            n_tx: sys.n_tx.unwrap_or(1),
            coherence: sys.coherence,
            pilot_len: sys.pilot_len.unwrap_or(2 * s),
            p_m: db_to_linear(sys.p_m_db),
            p_s: db_to_linear(sys.p_s_db),
            p_tau: db_to_linear(sys.p_tau_db),
        };

        let f = &self.fading;
        let angles = |v: &Option<Vec<f64>>| v.clone().unwrap_or_else(|| uniform_angles(s));
        let linear_k = |v: &PerCell<DbValue>, name: &str| -> Result<Vec<f64>> {
            Ok(v.expand(s, name)?
                .into_iter()
                .map(DbValue::linear)
                .collect())
        };
        let fading = FadingProfile {
            beta: f.beta.expand(s, "beta")?,
            alpha: f.alpha.expand(s, "alpha")?,
            k_m: linear_k(&f.k_m_db, "k_m_db")?,
            k_s: linear_k(&f.k_s_db, "k_s_db")?,
            aoa_m: angles(&f.aoa_m),
            aoa_s: angles(&f.aoa_s),
            aoa2_m: angles(&f.aoa2_m),
            aoa2_s: angles(&f.aoa2_s),
        };

        let i = &self.interference;
        let interference = InterferenceProfile {
            sigma2_m: i.sigma2_m,
            sigma2_s: i.sigma2_s.expand(s, "sigma2_s")?,
            sigma2_c: i.sigma2_c.expand(s, "sigma2_c")?,
            zeta2_m: i.zeta2_m.expand(s, "zeta2_m")?,
            zeta2_s: i.zeta2_s.expand(s, "zeta2_s")?,
            zeta2_c: i.zeta2_c.expand(s, "zeta2_c")?,
        };

        let a = &self.adc;
        let adc = AdcConfig {
            b_m1: a.b_m1,
            b_s1: a.b_s1,
            b_m2: a.b_m2,
            b_s2: a.b_s2,
            table: KappaTable::STANDARD,
        };

        let scn = Scenario {
            system,
            fading,
            interference,
            adc,
        };
        scn.validate()?;
        Ok(scn)
    }

    /// Sets the massive arrays for `phase` together with the fixed roles.
    pub fn set_antennas(&mut self, phase: super::Phase, mc: usize, sc: usize) {
        let s = self.system.small_cells;
        match phase {
            super::Phase::One => {
                self.system.m_rx = mc;
                self.system.n_rx = sc;
                self.system.m_tx = Some(s);
                self.system.n_tx = Some(1);
            }
            super::Phase::Two => {
                self.system.m_tx = Some(mc);
                self.system.n_tx = Some(sc);
                self.system.m_rx = s;
                self.system.n_rx = 1;
            }
        }
    }

    pub fn set_bits(&mut self, bits: Bits) {
        self.adc = AdcSection {
            b_m1: bits,
            b_s1: bits,
            b_m2: bits,
            b_s2: bits,
        };
    }

    pub fn set_common_k_db(&mut self, k_db: f64) {
        self.fading.k_m_db = PerCell::All(DbValue(k_db));
        self.fading.k_s_db = PerCell::All(DbValue(k_db));
    }

    /// Sets every residual SI and SC-to-SC variance of both phases.
    pub fn set_interference(&mut self, si: f64, sc: f64) {
        self.interference = InterferenceSection {
            sigma2_m: si,
            sigma2_s: PerCell::All(si),
            sigma2_c: PerPair::All(sc),
            zeta2_m: PerCell::All(si),
            zeta2_s: PerCell::All(si),
            zeta2_c: PerPair::All(sc),
        };
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::params::Phase;

    #[test]
    fn parses_scalars_lists_and_infinities() {
        let text = r#"
            [system]
            small_cells = 3
            m_rx = 64
            n_rx = 32
            p_m_db = 20.0

            [fading]
            beta = [0.1, 0.2, 0.3]
            k_m_db = [0.0, 10.0, -inf]
            k_s_db = "-inf"

            [interference]
            sigma2_c = [[0.0, 0.1, 0.2], [0.1, 0.0, 0.3], [0.2, 0.3, 0.0]]

            [adc]
            b_m1 = 2
            b_s1 = "inf"
        "#;
        let file = ScenarioFile::from_toml_str(text).unwrap();
        let scn = file.build().unwrap();
        assert_eq!(scn.system.m_tx, 3);
        assert_eq!(scn.system.pilot_len, 6);
        assert!((scn.system.p_m - 100.0).abs() < 1e-12);
        assert_eq!(scn.fading.beta, vec![0.1, 0.2, 0.3]);
        assert_eq!(scn.fading.k_m[2], 0.0);
        assert!((scn.fading.k_m[1] - 10.0).abs() < 1e-12);
        assert!(scn.fading.k_s.iter().all(|&k| k == 0.0));
        assert_eq!(scn.interference.sigma2_c[1][2], 0.3);
        assert_eq!(scn.adc.b_m1, Bits::Finite(2));
        assert_eq!(scn.adc.b_s1, Bits::Infinite);
        assert_eq!(scn.adc.b_m2, Bits::Finite(3));
        assert!(scn.check(Phase::One).is_ok());
    }

    #[test]
    fn rejects_wrong_lengths_and_unknown_keys() {
        let bad_len = "[fading]\nbeta = [0.1, 0.2]\n";
        assert!(ScenarioFile::from_toml_str(bad_len)
            .unwrap()
            .build()
            .is_err());
        assert!(ScenarioFile::from_toml_str("[system]\nbogus = 1\n").is_err());
    }

    #[test]
    fn json_round_trip_keeps_rayleigh() {
        let mut file = ScenarioFile::default();
        file.set_common_k_db(f64::NEG_INFINITY);
        file.set_bits(Bits::Infinite);
        let json = serde_json::to_string(&file).unwrap();
        let back: ScenarioFile = serde_json::from_str(&json).unwrap();
        assert_eq!(back, file);
        let toml_text = file.to_toml_string().unwrap();
        assert_eq!(ScenarioFile::from_toml_str(&toml_text).unwrap(), file);
    }
}
