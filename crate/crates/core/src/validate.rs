//! Closed forms against Monte Carlo: per-term SINR agreement for both phases
//! plus the channel-moment oracle.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::analytic::{se, RateReport, SinrTerms};
use crate::error::Result;
use crate::montecarlo::{mc_se, moment_oracle, McSettings};
use crate::params::{Bits, KappaTable, Phase, Scenario};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ValidateSettings {
    pub mc: McSettings,
    pub bits: Vec<Bits>,
    pub phase1_arrays: (usize, usize),
    pub phase2_arrays: (usize, usize),
    /// Relative tolerance on each SINR term.
    pub term_rel_tol: f64,
    /// Tolerance in standard errors, for SINR terms and moments.
    pub z_tol: f64,
    /// Relative tolerance on sum SEs.
    pub sum_rel_tol: f64,
    /// Replaces the κ table on the analytic side only.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub analytic_kappa: Option<KappaTable>,
}

impl Default for ValidateSettings {
    fn default() -> Self {
        ValidateSettings {
            mc: McSettings::new(100_000, 1),
            bits: vec![Bits::Finite(1), Bits::Finite(2), Bits::Infinite],
            phase1_arrays: (256, 128),
            phase2_arrays: (128, 128),
            term_rel_tol: 0.05,
            z_tol: 4.0,
            sum_rel_tol: 0.02,
            analytic_kappa: None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Check {
    pub label: String,
    pub analytic: f64,
    pub empirical: f64,
    /// Zero for deterministic quantities.
    pub std_err: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub rel_tol: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub z_tol: Option<f64>,
}

impl Check {
    pub fn rel_err(&self) -> f64 {
        let d = (self.empirical - self.analytic).abs();
        if d == 0.0 {
            0.0
        } else {
            d / self.analytic.abs()
        }
    }

    pub fn z_score(&self) -> f64 {
        let d = self.empirical - self.analytic;
        // Deterministic terms differ only by rounding.
        let floor = 1e-12 * self.analytic.abs().max(f64::MIN_POSITIVE);
        d / self.std_err.max(floor)
    }

    pub fn passed(&self) -> bool {
        self.rel_tol.is_none_or(|t| self.rel_err() <= t)
            && self.z_tol.is_none_or(|t| self.z_score().abs() <= t)
    }
}

impl fmt::Display for Check {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} {}: analytic {:.6e}, empirical {:.6e} ± {:.2e} (rel {:.3}%, z {:.2})",
            if self.passed() { "ok  " } else { "FAIL" },
            self.label,
            self.analytic,
            self.empirical,
            self.std_err,
            100.0 * self.rel_err(),
            self.z_score(),
        )
    }
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct ValidationReport {
    pub checks: Vec<Check>,
}

impl ValidationReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(Check::passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.passed())
    }

    /// The failing check with the largest relative error, or the largest
    /// relative error overall if everything passed.
    pub fn worst(&self) -> Option<&Check> {
        let key = |c: &&Check| (!c.passed(), c.rel_err());
        self.checks.iter().max_by(|a, b| {
            key(a)
                .partial_cmp(&key(b))
                .unwrap_or(std::cmp::Ordering::Equal)
        })
    }
}

fn bits_label(b: Bits) -> String {
    match b {
        Bits::Finite(b) => format!("b={b}"),
        Bits::Infinite => "b=inf".into(),
    }
}

fn compare(
    an: &RateReport,
    mc: &RateReport,
    tag: &str,
    s: &ValidateSettings,
    out: &mut Vec<Check>,
) {
    let sides = [
        ("mc", &an.mc_links, &mc.mc_links),
        ("sc", &an.sc_links, &mc.sc_links),
    ];
    for (side, a_links, m_links) in sides {
        for (k, (a, m)) in a_links.iter().zip(m_links).enumerate() {
            let errs = m.std_err.unwrap_or_default().to_array();
            let (ta, tm) = (a.terms.to_array(), m.terms.to_array());
            for (i, name) in SinrTerms::NAMES.iter().enumerate() {
                out.push(Check {
                    label: format!("{tag} {side} link {} {name}", k + 1),
                    analytic: ta[i],
                    empirical: tm[i],
                    std_err: errs[i],
                    rel_tol: Some(s.term_rel_tol),
                    z_tol: Some(s.z_tol),
                });
            }
        }
    }
    let sums = [
        ("sum_mc", an.sum_se_mc(), mc.sum_se_mc()),
        ("sum_sc", an.sum_se_sc(), mc.sum_se_sc()),
        ("sum_total", an.sum_se_total(), mc.sum_se_total()),
    ];
    for (name, a, m) in sums {
        out.push(Check {
            label: format!("{tag} {name} SE"),
            analytic: a,
            empirical: m,
            std_err: 0.0,
            rel_tol: Some(s.sum_rel_tol),
            z_tol: None,
        });
    }
}

/// Analytic vs Monte Carlo SINR terms and sum SE for one phase and one
/// resolution.
pub fn validate_point(
    scn: &Scenario,
    phase: Phase,
    bits: Bits,
    s: &ValidateSettings,
) -> Result<Vec<Check>> {
    let point = scn.clone().with_bits(bits);
    let mut analytic_point = point.clone();
    if let Some(t) = s.analytic_kappa {
        analytic_point.adc.table = t;
    }
    let an = se(&analytic_point, phase)?;
    let mc = mc_se(&point, &point.stats(), phase, &s.mc)?;
    let mut out = Vec::new();
    compare(
        &an,
        &mc,
        &format!("phase {phase} {}", bits_label(bits)),
        s,
        &mut out,
    );
    Ok(out)
}

/// Runs the moment oracle and the analytic-vs-MC comparison of both phases
/// at every resolution in `s.bits`.
pub fn validate(scn: &Scenario, s: &ValidateSettings) -> Result<ValidationReport> {
    s.mc.validate()?;
    let mut checks = Vec::new();
    let p1 = scn
        .clone()
        .with_phase1_antennas(s.phase1_arrays.0, s.phase1_arrays.1);
    for m in moment_oracle(&p1, &p1.stats(), &s.mc)? {
        checks.push(Check {
            label: format!("moment {}", m.name),
            analytic: m.analytic,
            empirical: m.empirical,
            std_err: m.std_err,
            rel_tol: None,
            z_tol: Some(s.z_tol),
        });
    }
    let p2 = scn
        .clone()
        .with_phase2_antennas(s.phase2_arrays.0, s.phase2_arrays.1);
    for (phase, point) in [(Phase::One, &p1), (Phase::Two, &p2)] {
        for &b in &s.bits {
            checks.extend(validate_point(point, phase, b, s)?);
        }
    }
    Ok(ValidationReport { checks })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::params::default_scenario;

    fn quick() -> ValidateSettings {
        ValidateSettings {
            mc: McSettings::new(4_000, 3),
            phase1_arrays: (64, 32),
            phase2_arrays: (32, 32),
            bits: vec![Bits::Finite(2)],
            term_rel_tol: 0.25,
            sum_rel_tol: 0.05,
            ..Default::default()
        }
    }

    #[test]
    fn small_default_run_passes() {
        let r = validate(&default_scenario(), &quick()).unwrap();
        assert!(r.passed(), "{}", r.worst().unwrap());
        assert_eq!(r.checks.len(), 7 + 2 * (12 * 7 + 3));
    }

    #[test]
    fn corrupted_kappa_names_quantization() {
        let s = ValidateSettings {
            analytic_kappa: Some(KappaTable::STANDARD.with_entry(2, 0.03).unwrap()),
            ..quick()
        };
        let r = validate(&default_scenario(), &s).unwrap();
        assert!(!r.passed());
        assert!(
            r.worst().unwrap().label.ends_with("quantization"),
            "{}",
            r.worst().unwrap()
        );
    }

    #[test]
    fn check_arithmetic() {
        let c = Check {
            label: "x".into(),
            analytic: 2.0,
            empirical: 2.09,
            std_err: 0.05,
            rel_tol: Some(0.05),
            z_tol: Some(4.0),
        };
        assert!((c.rel_err() - 0.045).abs() < 1e-12 && (c.z_score() - 1.8).abs() < 1e-12);
        assert!(c.passed());
        let exact = Check {
            empirical: 2.0,
            std_err: 0.0,
            ..c.clone()
        };
        assert!(exact.passed() && exact.rel_err() == 0.0);
        let zero = Check {
            analytic: 0.0,
            empirical: 0.0,
            std_err: 0.0,
            ..c.clone()
        };
        assert!(zero.passed());
        let far = Check {
            empirical: 2.5,
            std_err: 1.0,
            ..c
        };
        assert!(!far.passed());
    }
}
