//! Parameter sweeps producing CSV/JSON result tables.

use std::fmt;
use std::io::Write;
use std::path::Path;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::analytic::{
    limit_k_infinity, power_scaling_limit, se, se_half_duplex, with_power_scaling, RateReport,
};
use crate::energy::{optimal_bits, total_power, PowerModel};
use crate::error::{Error, Result};
use crate::montecarlo::{mc_se, McSettings};
use crate::params::{db_to_linear, Bits, Phase, Scenario, ScenarioFile};

/// Serde helpers writing non-finite floats as `"inf"`/`"-inf"` so that bit
/// grids containing ideal ADCs survive JSON.
mod nonfinite {
    use serde::{Deserialize, Deserializer, Serialize, Serializer};

    use crate::params::DbValue;

    pub fn serialize<S: Serializer>(v: &f64, s: S) -> Result<S::Ok, S::Error> {
        DbValue(*v).serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<f64, D::Error> {
        Ok(DbValue::deserialize(d)?.0)
    }

    pub mod vec {
        use super::*;

        pub fn serialize<S: Serializer>(v: &[f64], s: S) -> Result<S::Ok, S::Error> {
            let w: Vec<DbValue> = v.iter().copied().map(DbValue).collect();
            w.serialize(s)
        }

        pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<f64>, D::Error> {
            Ok(Vec::<DbValue>::deserialize(d)?
                .into_iter()
                .map(|x| x.0)
                .collect())
        }
    }

    pub mod option {
        use super::*;

        pub fn serialize<S: Serializer>(v: &Option<f64>, s: S) -> Result<S::Ok, S::Error> {
            v.map(DbValue).serialize(s)
        }

        pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Option<f64>, D::Error> {
            Ok(Option::<DbValue>::deserialize(d)?.map(|x| x.0))
        }
    }
}

/// A scenario dimension that can be swept or used as a series.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Axis {
    #[serde(rename = "M_rx")]
    MRx,
    #[serde(rename = "N_rx")]
    NRx,
    #[serde(rename = "M_tx")]
    MTx,
    #[serde(rename = "N_tx")]
    NTx,
    #[serde(rename = "b")]
    Bits,
    #[serde(rename = "K_dB")]
    KDb,
    /// Every SI and SC-to-SC variance at once.
    #[serde(rename = "sigma2")]
    Sigma2,
    /// `p_m = p_s`, in dB.
    #[serde(rename = "SNR_dB")]
    SnrDb,
    #[serde(rename = "S")]
    SmallCells,
    #[serde(rename = "FOM_fJ")]
    FomFj,
    #[serde(rename = "phase")]
    Phase,
}

impl Axis {
    pub fn name(self) -> &'static str {
        match self {
            Axis::MRx => "M_rx",
            Axis::NRx => "N_rx",
            Axis::MTx => "M_tx",
            Axis::NTx => "N_tx",
            Axis::Bits => "b",
            Axis::KDb => "K_dB",
            Axis::Sigma2 => "sigma2",
            Axis::SnrDb => "SNR_dB",
            Axis::SmallCells => "S",
            Axis::FomFj => "FOM_fJ",
            Axis::Phase => "phase",
        }
    }

    fn is_integer(self) -> bool {
        matches!(
            self,
            Axis::MRx | Axis::NRx | Axis::MTx | Axis::NTx | Axis::SmallCells | Axis::Phase
        )
    }

    /// Phase whose antenna roles the axis belongs to, if any.
    fn phase(self) -> Option<Phase> {
        match self {
            Axis::MRx | Axis::NRx => Some(Phase::One),
            Axis::MTx | Axis::NTx => Some(Phase::Two),
            _ => None,
        }
    }
}

impl fmt::Display for Axis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Output {
    Analytic,
    MonteCarlo,
    /// K→∞ limit, plus the power-scaling limit when the spec scales power.
    Limits,
    /// Half-duplex baseline.
    Hd,
    /// Receiver power and EE at the swept resolution.
    Ee,
}

/// `p = E/antennas` power scaling, energies in dB.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PowerScaling {
    pub e_m_db: f64,
    pub e_s_db: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Series {
    pub axis: Axis,
    #[serde(with = "nonfinite::vec")]
    pub values: Vec<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SweepSpec {
    #[serde(default)]
    pub name: String,
    pub phase: Phase,
    pub variable: Axis,
    #[serde(with = "nonfinite::vec")]
    pub grid: Vec<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub series: Option<Series>,
    /// When an MC/SC array size is swept, the other array of the same phase
    /// follows as `round(companion · value)`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub companion: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub power_scaling: Option<PowerScaling>,
    #[serde(default)]
    pub outputs: Vec<Output>,
    #[serde(default)]
    pub scenario: ScenarioFile,
    #[serde(default)]
    pub power_model: PowerModel,
    #[serde(default)]
    pub mc: McSettings,
}

fn check_axis_value(axis: Axis, v: f64) -> Result<()> {
    let bad = |why: &str| Err(Error::InvalidSweep(format!("{axis} value {v} {why}")));
    match axis {
        Axis::Bits if v == f64::INFINITY => Ok(()),
        Axis::Bits if v.fract() != 0.0 || v < 1.0 => bad("is not a bit count"),
        Axis::KDb if v.is_nan() || v == f64::INFINITY => bad("is not a K-factor"),
        Axis::Phase if v != 1.0 && v != 2.0 => bad("is not a phase"),
        a if a.is_integer() && (v.fract() != 0.0 || v < 1.0) => bad("is not a positive integer"),
        Axis::Sigma2 if !(v >= 0.0 && v.is_finite()) => bad("is not a variance"),
        Axis::SnrDb | Axis::FomFj if !v.is_finite() => bad("is not finite"),
        Axis::FomFj if v <= 0.0 => bad("is not positive"),
        _ => Ok(()),
    }
}

impl SweepSpec {
    pub fn validate(&self) -> Result<()> {
        if self.grid.is_empty() {
            return Err(Error::InvalidSweep("grid is empty".into()));
        }
        if !self.grid.windows(2).all(|w| w[0] < w[1]) {
            return Err(Error::InvalidSweep(
                "grid must be strictly increasing".into(),
            ));
        }
        if self.variable == Axis::Phase {
            return Err(Error::InvalidSweep("phase can only be a series".into()));
        }
        for &v in &self.grid {
            check_axis_value(self.variable, v)?;
        }
        if let Some(s) = &self.series {
            if s.axis == self.variable {
                return Err(Error::InvalidSweep(
                    "series axis repeats the swept variable".into(),
                ));
            }
            if s.values.is_empty() {
                return Err(Error::InvalidSweep("series has no values".into()));
            }
            for &v in &s.values {
                check_axis_value(s.axis, v)?;
            }
        }
        for phase in self.phases() {
            for axis in self.axes() {
                if let Some(p) = axis.phase() {
                    if p != phase {
                        return Err(Error::InvalidSweep(format!(
                            "{axis} is not an antenna count of phase {phase}"
                        )));
                    }
                }
            }
        }
        if let Some(c) = self.companion {
            if !(c > 0.0 && c.is_finite()) {
                return Err(Error::InvalidSweep(format!(
                    "companion ratio {c} must be positive"
                )));
            }
        }
        self.mc.validate()?;
        self.power_model.validate()?;
        self.scenario.build()?;
        Ok(())
    }

    fn axes(&self) -> impl Iterator<Item = Axis> + '_ {
        std::iter::once(self.variable).chain(self.series.as_ref().map(|s| s.axis))
    }

    fn phases(&self) -> Vec<Phase> {
        match &self.series {
            Some(s) if s.axis == Axis::Phase => s
                .values
                .iter()
                .map(|&v| if v == 1.0 { Phase::One } else { Phase::Two })
                .collect(),
            _ => vec![self.phase],
        }
    }

    fn series_values(&self) -> Vec<Option<f64>> {
        match &self.series {
            Some(s) => s.values.iter().copied().map(Some).collect(),
            None => vec![None],
        }
    }

    fn max_cells(&self) -> usize {
        match &self.series {
            Some(s) if s.axis == Axis::SmallCells => {
                s.values.iter().fold(0.0f64, |a, &b| a.max(b)) as usize
            }
            _ if self.variable == Axis::SmallCells => {
                self.grid.iter().fold(0.0f64, |a, &b| a.max(b)) as usize
            }
            _ => self.scenario.system.small_cells,
        }
    }

    pub fn wants(&self, o: Output) -> bool {
        self.outputs.contains(&o)
    }

    /// Names of the value columns, fixed by the spec.
    pub fn columns(&self) -> Vec<String> {
        let s = self.max_cells();
        let mut cols = Vec::new();
        let mut sums_and_links = |prefix: &str, with_se: bool| {
            for part in ["sum_mc", "sum_sc", "sum_total"] {
                cols.push(format!("{prefix}_{part}"));
                if with_se {
                    cols.push(format!("{prefix}_{part}_se"));
                }
            }
            for side in ["mc", "sc"] {
                for k in 1..=s {
                    cols.push(format!("{prefix}_{side}_{k}"));
                    if with_se {
                        cols.push(format!("{prefix}_{side}_{k}_se"));
                    }
                }
            }
        };
        if self.wants(Output::Analytic) {
            sums_and_links("an", false);
        }
        if self.wants(Output::MonteCarlo) {
            sums_and_links("mc", true);
        }
        if self.wants(Output::Limits) {
            cols.extend(["limk_sum_mc", "limk_sum_sc", "limk_sum_total"].map(String::from));
            if self.power_scaling.is_some() {
                cols.extend(["limps_sum_mc", "limps_sum_sc", "limps_sum_total"].map(String::from));
            }
        }
        if self.wants(Output::Hd) {
            cols.extend(["hd_sum_mc", "hd_sum_sc", "hd_sum_total"].map(String::from));
        }
        if self.wants(Output::Ee) {
            cols.extend(["ee_bits", "ee_power_w", "ee_bits_per_joule"].map(String::from));
        }
        cols
    }

    /// Reads a spec from TOML or JSON, or recovers it from the header of a
    /// CSV or JSON result file written by [`SweepTable`].
    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref();
        let text = std::fs::read_to_string(path)?;
        let ext = path.extension().and_then(|e| e.to_str()).unwrap_or("");
        match ext {
            "toml" => toml::from_str(&text).map_err(|e| Error::Parse(e.to_string())),
            "csv" => Self::from_csv_header(&text),
            _ => {
                let v: serde_json::Value = serde_json::from_str(&text)?;
                match v.get("spec") {
                    Some(spec) if v.get("rows").is_some() => {
                        Ok(serde_json::from_value(spec.clone())?)
                    }
                    _ => Ok(serde_json::from_value(v)?),
                }
            }
        }
    }

    pub fn from_csv_header(text: &str) -> Result<Self> {
        text.lines()
            .take_while(|l| l.starts_with('#'))
            .find_map(|l| l.strip_prefix("# spec: "))
            .ok_or_else(|| Error::Parse("no spec line in CSV header".into()))
            .and_then(|j| Ok(serde_json::from_str(j)?))
    }

    /// Spec serialized as one JSON line; identical specs give identical text.
    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string(self)?)
    }
}

/// Hex SHA-256 prefix of the canonical JSON of `value`.
pub fn content_hash<T: Serialize>(value: &T) -> Result<String> {
    let json = serde_json::to_vec(value)?;
    let digest = Sha256::digest(&json);
    Ok(digest[..8].iter().map(|b| format!("{b:02x}")).collect())
}

/// Seed of grid point `index`, derived from the master seed.
pub fn point_seed(master: u64, index: usize) -> u64 {
    let mut h = Sha256::new();
    h.update(master.to_le_bytes());
    h.update((index as u64).to_le_bytes());
    let d = h.finalize();
    u64::from_le_bytes(d[..8].try_into().expect("digest has 32 bytes"))
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ResultRow {
    #[serde(with = "nonfinite::option")]
    pub series: Option<f64>,
    #[serde(with = "nonfinite")]
    pub value: f64,
    pub scenario_hash: String,
    pub seed: u64,
    /// One entry per spec column; `None` where a value is undefined.
    pub values: Vec<Option<f64>>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepTable {
    pub spec: SweepSpec,
    pub spec_hash: String,
    pub columns: Vec<String>,
    pub rows: Vec<ResultRow>,
}

/// A fully resolved grid point.
#[derive(Debug, Clone)]
pub struct Point {
    pub phase: Phase,
    pub scenario: Scenario,
    pub power_model: PowerModel,
}

fn phase_arrays(file: &ScenarioFile, phase: Phase) -> (usize, usize) {
    let sys = &file.system;
    match phase {
        Phase::One => (sys.m_rx, sys.n_rx),
        Phase::Two => (sys.m_tx.unwrap_or(sys.small_cells), sys.n_tx.unwrap_or(1)),
    }
}

impl SweepSpec {
    /// Resolves the scenario at one (series, grid) coordinate.
    pub fn point(&self, series: Option<f64>, value: f64) -> Result<Point> {
        let mut file = self.scenario.clone();
        let mut model = self.power_model;
        let mut phase = self.phase;
        let mut assignments = vec![(self.variable, value)];
        if let (Some(s), Some(v)) = (&self.series, series) {
            assignments.insert(0, (s.axis, v));
        }
        for &(axis, v) in &assignments {
            if axis == Axis::Phase {
                phase = if v == 1.0 { Phase::One } else { Phase::Two };
            }
        }
        let (mut mc, mut sc) = phase_arrays(&file, phase);
        for (axis, v) in assignments {
            let companion = |x: usize| {
                self.companion
                    .map(|c| ((c * x as f64).round() as usize).max(1))
            };
            match axis {
                Axis::MRx | Axis::MTx => {
                    mc = v as usize;
                    sc = companion(mc).unwrap_or(sc);
                }
                Axis::NRx | Axis::NTx => {
                    sc = v as usize;
                    if let Some(c) = self.companion {
                        mc = ((sc as f64 / c).round() as usize).max(1);
                    }
                }
                Axis::Bits => file.set_bits(if v.is_infinite() {
                    Bits::Infinite
                } else {
                    Bits::Finite(v as u32)
                }),
                Axis::KDb => file.set_common_k_db(v),
                Axis::Sigma2 => file.set_interference(v, v),
                Axis::SnrDb => {
                    file.system.p_m_db = v;
                    file.system.p_s_db = v;
                }
                Axis::SmallCells => {
                    file.system.small_cells = v as usize;
                    file.system.pilot_len = None;
                    file.fading.aoa_m = None;
                    file.fading.aoa_s = None;
                    file.fading.aoa2_m = None;
                    file.fading.aoa2_s = None;
                }
                Axis::FomFj => model.fom = v * 1e-15,
                Axis::Phase => {}
            }
        }
        file.set_antennas(phase, mc, sc);
        let mut scenario = file.build()?;
        if let Some(ps) = self.power_scaling {
            scenario = with_power_scaling(
                scenario,
                phase,
                db_to_linear(ps.e_m_db),
                db_to_linear(ps.e_s_db),
            );
        }
        scenario.check(phase)?;
        Ok(Point {
            phase,
            scenario,
            power_model: model,
        })
    }
}

fn push_report(out: &mut Vec<Option<f64>>, r: &RateReport, cells: usize, with_se: bool) {
    let sum_se = |links: &[crate::analytic::LinkRate]| -> f64 {
        // First-order proxy: each link's SE error is its desired-term
        // relative error times its SE; links add in quadrature.
        links
            .iter()
            .filter_map(|l| {
                l.std_err
                    .map(|e| (e.desired / l.terms.desired * l.se).powi(2))
            })
            .sum::<f64>()
            .sqrt()
    };
    let sums = [
        (r.sum_se_mc(), sum_se(&r.mc_links)),
        (r.sum_se_sc(), sum_se(&r.sc_links)),
        (
            r.sum_se_total(),
            sum_se(&r.mc_links).hypot(sum_se(&r.sc_links)),
        ),
    ];
    for (v, e) in sums {
        out.push(Some(v));
        if with_se {
            out.push(Some(e));
        }
    }
    for links in [&r.mc_links, &r.sc_links] {
        for k in 0..cells {
            let l = links.get(k);
            out.push(l.map(|l| l.se));
            if with_se {
                out.push(l.and_then(|l| l.std_err.map(|e| e.desired / l.terms.desired * l.se)));
            }
        }
    }
}

fn sums(r: &RateReport) -> [Option<f64>; 3] {
    [
        Some(r.sum_se_mc()),
        Some(r.sum_se_sc()),
        Some(r.sum_se_total()),
    ]
}

fn evaluate(spec: &SweepSpec, p: &Point, seed: u64) -> Result<Vec<Option<f64>>> {
    let scn = &p.scenario;
    let stats = scn.stats();
    let cells = spec.max_cells();
    let mut out = Vec::new();
    if spec.wants(Output::Analytic) {
        push_report(&mut out, &se(scn, p.phase)?, cells, false);
    }
    if spec.wants(Output::MonteCarlo) {
        let mc = McSettings { seed, ..spec.mc };
        push_report(&mut out, &mc_se(scn, &stats, p.phase, &mc)?, cells, true);
    }
    if spec.wants(Output::Limits) {
        match limit_k_infinity(scn, p.phase) {
            Ok(r) => out.extend(sums(&r)),
            Err(Error::HeterogeneousK) => out.extend([None; 3]),
            Err(e) => return Err(e),
        }
        if let Some(ps) = spec.power_scaling {
            let r = power_scaling_limit(
                db_to_linear(ps.e_m_db),
                db_to_linear(ps.e_s_db),
                &scn.fading,
                &scn.adc,
                p.phase,
                scn.system.tau_d(),
            )?;
            out.extend(sums(&r));
        }
    }
    if spec.wants(Output::Hd) {
        out.extend(sums(&se_half_duplex(scn, &stats, p.phase)?));
    }
    if spec.wants(Output::Ee) {
        let bits = match p.phase {
            Phase::One => scn.adc.b_m1,
            Phase::Two => scn.adc.b_m2,
        };
        let sum_se = se(scn, p.phase)?.sum_se_total();
        let b_col = bits.finite().map(f64::from);
        match bits {
            Bits::Infinite => out.extend([b_col, None, None]),
            Bits::Finite(_) => {
                let power = total_power(p.phase, scn, bits, &p.power_model)?.total;
                out.extend([b_col, Some(power), Some(p.power_model.b_w * sum_se / power)]);
            }
        }
    }
    Ok(out)
}

/// Evaluates every (series, grid) point. Points run in parallel; each has
/// its own seed, so the table does not depend on scheduling.
pub fn run_sweep(spec: &SweepSpec) -> Result<SweepTable> {
    spec.validate()?;
    let columns = spec.columns();
    let coords: Vec<(Option<f64>, f64)> = if spec.outputs.is_empty() {
        Vec::new()
    } else {
        spec.series_values()
            .into_iter()
            .flat_map(|s| spec.grid.iter().map(move |&v| (s, v)))
            .collect()
    };
    let rows = coords
        .par_iter()
        .enumerate()
        .map(|(i, &(series, value))| {
            let p = spec.point(series, value)?;
            let seed = point_seed(spec.mc.seed, i);
            let values = evaluate(spec, &p, seed)?;
            debug_assert_eq!(values.len(), columns.len());
            Ok(ResultRow {
                series,
                value,
                scenario_hash: content_hash(&p.scenario)?,
                seed,
                values,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(SweepTable {
        spec_hash: content_hash(spec)?,
        spec: spec.clone(),
        columns,
        rows,
    })
}

/// EE-optimal resolution for one series value.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BitsOptimum {
    #[serde(with = "nonfinite::option")]
    pub series: Option<f64>,
    pub bits: u32,
    pub ee_bits_per_joule: f64,
    pub sum_se: f64,
    pub power_w: f64,
}

/// Runs [`optimal_bits`] for every series value of a sweep over `b`,
/// scanning each integer between the smallest and largest finite grid value.
pub fn optimal_bits_table(spec: &SweepSpec) -> Result<Vec<BitsOptimum>> {
    spec.validate()?;
    if spec.variable != Axis::Bits {
        return Err(Error::InvalidSweep(
            "the EE optimum needs a sweep over b".into(),
        ));
    }
    let finite: Vec<u32> = spec
        .grid
        .iter()
        .filter(|v| v.is_finite())
        .map(|&v| v as u32)
        .collect();
    let (Some(&lo), Some(&hi)) = (finite.first(), finite.last()) else {
        return Err(Error::InvalidSweep(
            "the b grid has no finite resolution".into(),
        ));
    };
    spec.series_values()
        .into_iter()
        .map(|s| {
            let p = spec.point(s, lo as f64)?;
            let (bits, r) = optimal_bits(p.phase, &p.scenario, &p.power_model, lo..=hi)?;
            Ok(BitsOptimum {
                series: s,
                bits,
                ee_bits_per_joule: r.ee.expect("finite bits have an EE"),
                sum_se: r.sum_se,
                power_w: r.power.expect("finite bits have a power figure").total,
            })
        })
        .collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    #[default]
    Csv,
    Json,
}

fn fmt_opt(v: Option<f64>) -> String {
    v.map(|x| x.to_string()).unwrap_or_default()
}

impl SweepTable {
    pub fn write_csv<W: Write>(&self, mut w: W) -> Result<()> {
        writeln!(w, "# sweep: {}", self.spec.name)?;
        writeln!(w, "# spec: {}", self.spec.to_json()?)?;
        writeln!(w, "# spec_hash: {}", self.spec_hash)?;
        writeln!(w, "# seed: {}", self.spec.mc.seed)?;
        let mut csv = csv::Writer::from_writer(w);
        let series = self
            .spec
            .series
            .as_ref()
            .map_or("series", |s| s.axis.name());
        let mut header = vec![series.to_string(), self.spec.variable.name().to_string()];
        header.extend(["scenario_hash".to_string(), "seed".to_string()]);
        header.extend(self.columns.iter().cloned());
        csv.write_record(&header)?;
        for r in &self.rows {
            let mut rec = vec![
                fmt_opt(r.series),
                r.value.to_string(),
                r.scenario_hash.clone(),
                r.seed.to_string(),
            ];
            rec.extend(r.values.iter().map(|&v| fmt_opt(v)));
            csv.write_record(&rec)?;
        }
        csv.flush()?;
        Ok(())
    }

    pub fn to_csv_string(&self) -> Result<String> {
        let mut buf = Vec::new();
        self.write_csv(&mut buf)?;
        Ok(String::from_utf8(buf).expect("csv output is UTF-8"))
    }

    pub fn to_json_string(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(self)?)
    }

    pub fn write(&self, format: Format, w: impl Write) -> Result<()> {
        match format {
            Format::Csv => self.write_csv(w),
            Format::Json => {
                let mut w = w;
                w.write_all(self.to_json_string()?.as_bytes())?;
                w.write_all(b"\n")?;
                Ok(())
            }
        }
    }

    /// Values of column `name` in row order.
    pub fn column(&self, name: &str) -> Option<Vec<Option<f64>>> {
        let i = self.columns.iter().position(|c| c == name)?;
        Some(self.rows.iter().map(|r| r.values[i]).collect())
    }
}
