//! Built-in sweeps, addressed by name from the command line.

use crate::energy::PowerModel;
use crate::error::{Error, Result};
use crate::montecarlo::McSettings;
use crate::params::{Phase, ScenarioFile};
use crate::sweep::{Axis, Output, PowerScaling, Series, SweepSpec};

#[derive(Debug, Clone)]
pub struct Preset {
    pub name: &'static str,
    pub description: &'static str,
    pub spec: SweepSpec,
}

fn range(start: f64, stop: f64, step: f64) -> Vec<f64> {
    let n = ((stop - start) / step).round() as usize;
    (0..=n).map(|i| start + i as f64 * step).collect()
}

fn bits_with_ideal(max: u32) -> Vec<f64> {
    let mut v: Vec<f64> = (1..=max).map(f64::from).collect();
    v.push(f64::INFINITY);
    v
}

fn base(name: &str, phase: Phase, variable: Axis, grid: Vec<f64>) -> SweepSpec {
    SweepSpec {
        name: name.to_string(),
        phase,
        variable,
        grid,
        series: None,
        companion: None,
        power_scaling: None,
        outputs: vec![Output::Analytic],
        scenario: ScenarioFile::default(),
        power_model: PowerModel::default(),
        mc: McSettings::default(),
    }
}

fn series(axis: Axis, values: &[f64]) -> Option<Series> {
    Some(Series {
        axis,
        values: values.to_vec(),
    })
}

const BITS_1_2_INF: [f64; 3] = [1.0, 2.0, f64::INFINITY];

fn antenna_sweep(name: &str, phase: Phase, scaled: bool) -> SweepSpec {
    let axis = match phase {
        Phase::One => Axis::MRx,
        Phase::Two => Axis::MTx,
    };
    let grid = if scaled {
        range(50.0, 1000.0, 50.0)
    } else {
        range(50.0, 500.0, 50.0)
    };
    let mut s = base(name, phase, axis, grid);
    s.companion = Some(1.0);
    s.series = series(Axis::Bits, &BITS_1_2_INF);
    s.outputs = vec![Output::Analytic, Output::MonteCarlo];
    if scaled {
        s.power_scaling = Some(PowerScaling {
            e_m_db: 10.0,
            e_s_db: 10.0,
        });
        s.outputs.push(Output::Limits);
    }
    s
}

fn fig6_scenario() -> ScenarioFile {
    let mut f = ScenarioFile::default();
    f.set_interference(0.5, 0.3);
    f.set_bits(crate::params::Bits::Finite(3));
    f.set_common_k_db(10.0);
    f
}

fn ee_sweep(
    name: &str,
    phase: Phase,
    max_bits: u32,
    series_axis: Axis,
    values: &[f64],
    k_db: f64,
) -> SweepSpec {
    let mut s = base(name, phase, Axis::Bits, range(1.0, max_bits as f64, 1.0));
    s.series = series(series_axis, values);
    s.outputs = vec![Output::Analytic, Output::Ee];
    s.scenario.set_common_k_db(k_db);
    match phase {
        Phase::One => s.scenario.set_antennas(Phase::One, 300, 200),
        Phase::Two => s.scenario.set_antennas(Phase::Two, 500, 250),
    }
    s
}

/// Every built-in sweep.
pub fn presets() -> Vec<Preset> {
    let fig4 = {
        let mut s = base("fig4", Phase::One, Axis::Bits, bits_with_ideal(10));
        s.series = series(Axis::Phase, &[1.0, 2.0]);
        let sys = &mut s.scenario.system;
        sys.m_rx = 500;
        sys.n_rx = 250;
        sys.m_tx = Some(500);
        sys.n_tx = Some(250);
        s
    };
    let fig5 = {
        let mut s = base("fig5", Phase::One, Axis::KDb, range(-10.0, 30.0, 5.0));
        s.scenario.set_antennas(Phase::One, 700, 350);
        s.outputs = vec![Output::Analytic, Output::Limits];
        s
    };
    let fig6a = {
        let mut s = base("fig6a", Phase::One, Axis::MRx, range(20.0, 600.0, 10.0));
        s.scenario = fig6_scenario();
        s.companion = Some(0.5);
        s.series = series(Axis::SmallCells, &[4.0, 6.0]);
        s.outputs = vec![Output::Analytic, Output::Hd];
        s
    };
    let fig6b = {
        let mut s = base("fig6b", Phase::One, Axis::Sigma2, range(0.0, 1.0, 0.05));
        s.scenario = fig6_scenario();
        s.companion = Some(0.5);
        s.series = series(Axis::MRx, &[150.0, 300.0]);
        s.outputs = vec![Output::Analytic, Output::Hd];
        s
    };
    let k_series = [0.0, 10.0];
    let fom_series = [5.0, 65.0, 494.0];
    let list = [
        (
            "fig3a",
            "phase 1 sum SE vs M_rx (N_rx = M_rx), b in {1, 2, inf}, analytic and Monte Carlo",
            antenna_sweep("fig3a", Phase::One, false),
        ),
        (
            "fig3b",
            "phase 2 sum SE vs M_tx (N_tx = M_tx), b in {1, 2, inf}, analytic and Monte Carlo",
            antenna_sweep("fig3b", Phase::Two, false),
        ),
        (
            "fig3c",
            "phase 1 power scaling, E_m = E_s = 10 dB, with saturation limits",
            antenna_sweep("fig3c", Phase::One, true),
        ),
        (
            "fig3d",
            "phase 2 power scaling, E_m = E_s = 10 dB, with saturation limits",
            antenna_sweep("fig3d", Phase::Two, true),
        ),
        (
            "fig4",
            "sum SE vs b for both phases at 500/250 antennas",
            fig4,
        ),
        (
            "fig5",
            "phase 1 sum SE vs K at M_rx = 700, N_rx = 350, with the K -> inf limit",
            fig5,
        ),
        (
            "fig6a",
            "FD vs HD sum SE vs M_rx (N_rx = M_rx/2), S in {4, 6}, heavy SI",
            fig6a,
        ),
        (
            "fig6b",
            "FD vs HD sum SE vs SI level, M_rx in {150, 300}",
            fig6b,
        ),
        (
            "fig7a",
            "phase 1 EE vs b, M_rx = 300, N_rx = 200, K in {0, 10} dB",
            ee_sweep("fig7a", Phase::One, 10, Axis::KDb, &k_series, 0.0),
        ),
        (
            "fig7b",
            "phase 1 EE/SE frontier, b = 1..15",
            ee_sweep("fig7b", Phase::One, 15, Axis::KDb, &k_series, 0.0),
        ),
        (
            "fig8a",
            "phase 2 EE vs b, M_tx = 500, N_tx = 250, K in {0, 10} dB",
            ee_sweep("fig8a", Phase::Two, 10, Axis::KDb, &k_series, 0.0),
        ),
        (
            "fig8b",
            "phase 2 EE/SE frontier, b = 1..15",
            ee_sweep("fig8b", Phase::Two, 15, Axis::KDb, &k_series, 0.0),
        ),
        (
            "fig9a",
            "phase 1 EE vs b for FOM in {5, 65, 494} fJ, K = 20 dB",
            ee_sweep("fig9a", Phase::One, 10, Axis::FomFj, &fom_series, 20.0),
        ),
        (
            "fig9b",
            "phase 1 EE/SE frontier for FOM in {5, 65, 494} fJ",
            ee_sweep("fig9b", Phase::One, 15, Axis::FomFj, &fom_series, 20.0),
        ),
    ];
    list.into_iter()
        .map(|(name, description, spec)| Preset {
            name,
            description,
            spec,
        })
        .collect()
}

pub fn preset(name: &str) -> Result<Preset> {
    presets()
        .into_iter()
        .find(|p| p.name == name)
        .ok_or_else(|| Error::InvalidSweep(format!("unknown preset {name:?}")))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::params::{db_to_linear, Bits};

    #[test]
    fn all_presets_validate() {
        let all = presets();
        assert_eq!(all.len(), 14);
        for p in &all {
            p.spec
                .validate()
                .unwrap_or_else(|e| panic!("{}: {e}", p.name));
            assert_eq!(p.spec.name, p.name);
        }
    }

    #[test]
    fn fig5_arrays_and_k_grid() {
        let s = preset("fig5").unwrap().spec;
        for k in [0.0, 10.0, 20.0, 30.0] {
            assert!(s.grid.contains(&k));
        }
        let p = s.point(None, 30.0).unwrap();
        assert_eq!((p.scenario.system.m_rx, p.scenario.system.n_rx), (700, 350));
    }

    #[test]
    fn fig6_interference_and_adc() {
        for name in ["fig6a", "fig6b"] {
            let s = preset(name).unwrap().spec;
            let scn = s.scenario.build().unwrap();
            assert_eq!(scn.interference.sigma2_m, 0.5);
            assert!(scn.interference.sigma2_s.iter().all(|&x| x == 0.5));
            assert!(scn
                .interference
                .sigma2_c
                .iter()
                .flatten()
                .all(|&x| x == 0.3));
            assert_eq!(scn.adc.b_m1, Bits::Finite(3));
            assert!(scn
                .fading
                .k_m
                .iter()
                .all(|&k| (k - db_to_linear(10.0)).abs() < 1e-12));
        }
    }

    #[test]
    fn fig9_fom_values() {
        let s = preset("fig9a").unwrap().spec;
        assert_eq!(s.series.as_ref().unwrap().values, vec![5.0, 65.0, 494.0]);
        let p = s.point(Some(494.0), 3.0).unwrap();
        assert!((p.power_model.fom - PowerModel::HIGH_POWER_FOM).abs() < 1e-27);
    }

    #[test]
    fn unknown_preset() {
        assert!(preset("fig10").is_err());
    }
}
