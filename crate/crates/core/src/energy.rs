//! Receiver power consumption, energy efficiency and EE-optimal ADC bits.
//!
//! Only receive chains are counted; transmit power is ignored.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::analytic::se;
use crate::error::{Error, Result};
use crate::montecarlo::{mc_se, McSettings};
use crate::params::{Bits, Phase, Scenario};

/// Per-chain and per-site power constants, in watts, joules and hertz.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct PowerModel {
    pub p_lna: f64,
    pub p_rfc: f64,
    pub p_bb: f64,
    /// Walden figure of merit, joules per conversion step.
    pub fom: f64,
    pub f_s: f64,
    pub b_w: f64,
}

impl Default for PowerModel {
    fn default() -> Self {
        PowerModel {
            p_lna: 5.4e-3,
            p_rfc: 40e-3,
            p_bb: 200e-3,
            fom: 15e-15,
            f_s: 2e9,
            b_w: 1e9,
        }
    }
}

impl PowerModel {
    pub const LOW_POWER_FOM: f64 = 5e-15;
    pub const INTERMEDIATE_FOM: f64 = 65e-15;
    pub const HIGH_POWER_FOM: f64 = 494e-15;

    pub fn with_fom(self, fom: f64) -> Self {
        PowerModel { fom, ..self }
    }

    pub fn validate(&self) -> Result<()> {
        let fields = [
            ("p_lna", self.p_lna),
            ("p_rfc", self.p_rfc),
            ("p_bb", self.p_bb),
            ("fom", self.fom),
            ("f_s", self.f_s),
            ("b_w", self.b_w),
        ];
        for (name, v) in fields {
            if !(v > 0.0 && v.is_finite()) {
                return Err(Error::config(format!(
                    "power model {name} must be positive, got {v}"
                )));
            }
        }
        Ok(())
    }

    /// Power of one receive chain: LNA, RF chain and an I/Q ADC pair.
    pub fn chain_power(&self, bits: Bits) -> Result<f64> {
        Ok(self.p_lna + self.p_rfc + 2.0 * p_adc(bits, self)?)
    }
}

/// `FOM·f_s·2^b`.
pub fn p_adc(bits: Bits, model: &PowerModel) -> Result<f64> {
    let b = bits.finite().ok_or(Error::InfiniteResolution)?;
    Ok(model.fom * model.f_s * 2f64.powi(b as i32))
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PowerBreakdown {
    pub mc: f64,
    pub sc: Vec<f64>,
    pub total: f64,
}

/// Receiver power of every site in `phase`. Phase 1 counts `M_rx` chains at
/// the MC BS and `N_rx` at each SC BS; phase 2 counts `S` and 1.
pub fn total_power(
    phase: Phase,
    scn: &Scenario,
    bits: Bits,
    model: &PowerModel,
) -> Result<PowerBreakdown> {
    scn.system.check_roles(phase)?;
    let chain = model.chain_power(bits)?;
    let sys = &scn.system;
    let s = sys.small_cells;
    let (mc_chains, sc_chains) = match phase {
        Phase::One => (sys.m_rx, sys.n_rx),
        Phase::Two => (s, 1),
    };
    let mc = mc_chains as f64 * chain + model.p_bb;
    let sc = vec![sc_chains as f64 * chain + model.p_bb; s];
    let total = mc + sc.iter().sum::<f64>();
    Ok(PowerBreakdown { mc, sc, total })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
pub enum SeSource {
    #[default]
    Analytic,
    MonteCarlo(McSettings),
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EEReport {
    pub phase: Phase,
    pub bits: Bits,
    pub sum_se: f64,
    /// `None` for ideal ADCs, whose power is undefined.
    pub power: Option<PowerBreakdown>,
    /// Bits per joule.
    pub ee: Option<f64>,
}

/// Energy efficiency `B_w·R_SE / P_C` with every receiver at `bits`.
pub fn ee(
    phase: Phase,
    scn: &Scenario,
    bits: Bits,
    model: &PowerModel,
    source: SeSource,
) -> Result<EEReport> {
    model.validate()?;
    let point = scn.clone().with_bits(bits);
    let report = match source {
        SeSource::Analytic => se(&point, phase)?,
        SeSource::MonteCarlo(mc) => mc_se(&point, &point.stats(), phase, &mc)?,
    };
    let sum_se = report.sum_se_total();
    let power = match bits {
        Bits::Infinite => None,
        Bits::Finite(_) => Some(total_power(phase, &point, bits, model)?),
    };
    let ee = power.as_ref().map(|p| model.b_w * sum_se / p.total);
    Ok(EEReport {
        phase,
        bits,
        sum_se,
        power,
        ee,
    })
}

fn check_range(bits: &std::ops::RangeInclusive<u32>) -> Result<()> {
    if bits.is_empty() || *bits.start() == 0 {
        return Err(Error::config(format!("invalid bit range {bits:?}")));
    }
    Ok(())
}

/// EE at every resolution of `bits`, in order.
pub fn ee_scan(
    phase: Phase,
    scn: &Scenario,
    model: &PowerModel,
    bits: std::ops::RangeInclusive<u32>,
) -> Result<Vec<EEReport>> {
    check_range(&bits)?;
    bits.into_par_iter()
        .map(|b| ee(phase, scn, Bits::Finite(b), model, SeSource::Analytic))
        .collect()
}

/// Exhaustive integer scan for the EE-maximizing resolution; ties go to the
/// smaller `b`.
pub fn optimal_bits(
    phase: Phase,
    scn: &Scenario,
    model: &PowerModel,
    bits: std::ops::RangeInclusive<u32>,
) -> Result<(u32, EEReport)> {
    let scan = ee_scan(phase, scn, model, bits)?;
    let mut best: Option<EEReport> = None;
    for r in scan {
        let better = match &best {
            None => true,
            Some(b) => r.ee > b.ee,
        };
        if better {
            best = Some(r);
        }
    }
    let best = best.expect("range checked to be nonempty");
    let b = best.bits.finite().expect("scan uses finite bits");
    Ok((b, best))
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FrontierPoint {
    pub bits: u32,
    pub sum_se: f64,
    pub ee: f64,
}

/// `(b, sum SE, EE)` for every `b` in `bits`.
pub fn ee_se_frontier(
    phase: Phase,
    scn: &Scenario,
    model: &PowerModel,
    bits: std::ops::RangeInclusive<u32>,
) -> Result<Vec<FrontierPoint>> {
    Ok(ee_scan(phase, scn, model, bits)?
        .into_iter()
        .map(|r| FrontierPoint {
            bits: r.bits.finite().expect("scan uses finite bits"),
            sum_se: r.sum_se,
            ee: r.ee.expect("finite bits have a power figure"),
        })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::params::default_scenario;
    use approx::assert_relative_eq;

    #[test]
    fn adc_power_examples() {
        let m = PowerModel::default();
        assert_relative_eq!(
            p_adc(Bits::Finite(3), &m).unwrap(),
            0.24e-3,
            max_relative = 1e-12
        );
        for b in 1..12 {
            let r = p_adc(Bits::Finite(b + 1), &m).unwrap() / p_adc(Bits::Finite(b), &m).unwrap();
            assert_eq!(r, 2.0);
        }
        let lp = m.with_fom(PowerModel::LOW_POWER_FOM);
        assert_relative_eq!(
            p_adc(Bits::Finite(4), &lp).unwrap() * 3.0,
            p_adc(Bits::Finite(4), &m).unwrap(),
            max_relative = 1e-12
        );
        assert!(matches!(
            p_adc(Bits::Infinite, &m),
            Err(Error::InfiniteResolution)
        ));
    }

    #[test]
    fn site_power_examples() {
        let m = PowerModel::default();
        let p1 = default_scenario().with_phase1_antennas(300, 200);
        let bd = total_power(Phase::One, &p1, Bits::Finite(3), &m).unwrap();
        assert_relative_eq!(bd.mc, 300.0 * 45.88e-3 + 0.2, max_relative = 1e-12);
        assert_relative_eq!(bd.mc, 13.764 + 0.2, max_relative = 1e-12);

        let p2 = default_scenario().with_phase2_antennas(500, 250);
        let bd2 = total_power(Phase::Two, &p2, Bits::Finite(3), &m).unwrap();
        assert_relative_eq!(bd2.mc, 0.47528, max_relative = 1e-12);
        let other = default_scenario().with_phase2_antennas(64, 250);
        assert_eq!(
            bd2,
            total_power(Phase::Two, &other, Bits::Finite(3), &m).unwrap()
        );
    }

    #[test]
    fn power_grows_with_bits_antennas_and_cells() {
        let m = PowerModel::default();
        let scn = default_scenario().with_phase1_antennas(100, 50);
        let tot = |s: &Scenario, b| {
            total_power(Phase::One, s, Bits::Finite(b), &m)
                .unwrap()
                .total
        };
        assert!(tot(&scn, 4) > tot(&scn, 3));
        assert!(tot(&scn.clone().with_phase1_antennas(101, 50), 3) > tot(&scn, 3));
        let mut more = scn.clone();
        more.system.small_cells = 7;
        more.system.m_tx = 7;
        assert!(tot(&more, 3) > tot(&scn, 3));
    }

    #[test]
    fn ee_identity_and_bandwidth_linearity() {
        let m = PowerModel::default();
        let scn = default_scenario().with_phase1_antennas(120, 60);
        let r = ee(Phase::One, &scn, Bits::Finite(3), &m, SeSource::Analytic).unwrap();
        let p = r.power.as_ref().unwrap().total;
        assert_relative_eq!(r.ee.unwrap() * p, m.b_w * r.sum_se, max_relative = 1e-15);
        let wide = PowerModel {
            b_w: 2.0 * m.b_w,
            ..m
        };
        let r2 = ee(Phase::One, &scn, Bits::Finite(3), &wide, SeSource::Analytic).unwrap();
        assert_relative_eq!(r2.ee.unwrap(), 2.0 * r.ee.unwrap(), max_relative = 1e-15);
    }

    #[test]
    fn ideal_adc_has_no_ee() {
        let scn = default_scenario();
        let r = ee(
            Phase::One,
            &scn,
            Bits::Infinite,
            &PowerModel::default(),
            SeSource::Analytic,
        )
        .unwrap();
        assert!(r.ee.is_none() && r.power.is_none() && r.sum_se > 0.0);
    }

    #[test]
    fn frontier_shape() {
        let scn = default_scenario().with_phase1_antennas(300, 200);
        let f = ee_se_frontier(Phase::One, &scn, &PowerModel::default(), 1..=15).unwrap();
        assert!(f.windows(2).all(|w| w[1].sum_se >= w[0].sum_se));
        assert!(f[1].ee > f[0].ee && f[2].ee > f[1].ee);
        assert!(f[3..].windows(2).all(|w| w[1].ee < w[0].ee));
        let ideal = se(&scn.clone().with_bits(Bits::Infinite), Phase::One)
            .unwrap()
            .sum_se_total();
        assert!(ideal - f[14].sum_se < 1e-6 && f[14].ee < 0.05 * f[2].ee);
    }

    #[test]
    fn larger_k_frontier_dominates() {
        let m = PowerModel::default();
        let base = default_scenario().with_phase1_antennas(300, 200);
        let lo = ee_se_frontier(Phase::One, &base, &m, 1..=10).unwrap();
        let hi = ee_se_frontier(Phase::One, &base.with_common_k(10.0), &m, 1..=10).unwrap();
        for (a, b) in lo.iter().zip(&hi) {
            assert!(b.sum_se >= a.sum_se && b.ee >= a.ee);
        }
    }

    #[test]
    fn empty_range_is_rejected() {
        let scn = default_scenario();
        #[allow(clippy::reversed_empty_ranges)]
        let r = optimal_bits(Phase::One, &scn, &PowerModel::default(), 5..=4);
        assert!(r.is_err());
    }
}
