// Scenario and sweep definitions as TOML, run through the sweep engine and
// written as CSV whose header reproduces the run.
//
//     cargo run --release --example scenario_file

use fdbackhaul::sweep::{run_sweep, SweepSpec};

const SPEC: &str = r#"
name = "custom"
phase = 1
variable = "M_rx"
grid = [32, 64, 128]
companion = 0.5
outputs = ["analytic", "montecarlo", "hd"]

[series]
axis = "b"
values = [2, "inf"]

[scenario.system]
small_cells = 4
p_m_db = 5.0
p_s_db = 5.0

[scenario.fading]
k_m_db = 6.0
k_s_db = 6.0

[scenario.interference]
sigma2_m = 0.4

[mc]
n_realizations = 400
seed = 9
"#;

pub fn main() -> anyhow::Result<()> {
    let spec: SweepSpec = toml::from_str(SPEC)?;
    let table = run_sweep(&spec)?;
    let csv = table.to_csv_string()?;
    print!("{csv}");

    let again = run_sweep(&SweepSpec::from_csv_header(&csv)?)?;
    assert_eq!(again.to_csv_string()?, csv);
    println!("header replay reproduces the table");
    Ok(())
}
