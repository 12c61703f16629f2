use std::path::Path;
use std::process::{Command, Output};

use fdbackhaul::presets::preset;
use fdbackhaul::sweep::run_sweep;

fn bin(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_fdbackhaul"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

#[test]
fn csv_columns_match_golden() {
    let golden = include_str!("golden/columns.txt");
    for line in golden.lines() {
        let (name, expected) = line.split_once(": ").unwrap();
        let mut spec = preset(name).unwrap().spec;
        spec.grid.truncate(1);
        spec.mc.n_realizations = 2;
        let csv = run_sweep(&spec).unwrap().to_csv_string().unwrap();
        let header = csv.lines().find(|l| !l.starts_with('#')).unwrap();
        assert_eq!(header, expected, "{name}");
    }
}

#[test]
fn presets_lists_every_sweep() {
    let o = bin(&["presets"]);
    assert!(o.status.success());
    let names: Vec<String> = stdout(&o)
        .lines()
        .map(|l| l.split_whitespace().next().unwrap().to_string())
        .collect();
    assert_eq!(names.len(), 14);
    for n in [
        "fig3a", "fig3d", "fig4", "fig5", "fig6b", "fig7b", "fig8a", "fig9b",
    ] {
        assert!(names.iter().any(|x| x == n), "{n}");
    }
}

#[test]
fn sweep_replays_from_its_own_header() {
    let dir = tempfile::tempdir().unwrap();
    let first = dir.path().join("a.csv");
    let second = dir.path().join("b.csv");
    let spec = dir.path().join("s.toml");
    std::fs::write(
        &spec,
        "phase = 2\nvariable = \"M_tx\"\ngrid = [16, 32]\ncompanion = 1.0\noutputs = [\"analytic\", \"montecarlo\"]\n\n[mc]\nn_realizations = 100\n",
    )
    .unwrap();
    let p = |x: &Path| x.to_str().unwrap().to_string();
    assert!(
        bin(&["sweep", &p(&spec), "--seed", "42", "--out", &p(&first)])
            .status
            .success()
    );
    assert!(bin(&["sweep", &p(&first), "--out", &p(&second)])
        .status
        .success());
    let a = std::fs::read_to_string(&first).unwrap();
    assert_eq!(a, std::fs::read_to_string(&second).unwrap());
    assert!(a.contains("# seed: 42"));
    assert!(a
        .lines()
        .any(|l| l.starts_with("series,M_tx,") && l.contains("mc_sum_total_se")));

    let json = dir.path().join("a.json");
    assert!(bin(&["sweep", &p(&first), "--out", &p(&json)])
        .status
        .success());
    let replay = dir.path().join("c.csv");
    assert!(
        bin(&["sweep", &p(&json), "--format", "csv", "--out", &p(&replay)])
            .status
            .success()
    );
    assert_eq!(a, std::fs::read_to_string(&replay).unwrap());
}

#[test]
fn empty_outputs_write_header_only() {
    let dir = tempfile::tempdir().unwrap();
    let spec = dir.path().join("empty.toml");
    std::fs::write(&spec, "phase = 1\nvariable = \"b\"\ngrid = [1, 2, 3]\n").unwrap();
    let o = bin(&["sweep", spec.to_str().unwrap()]);
    assert!(o.status.success());
    let text = stdout(&o);
    let body: Vec<&str> = text.lines().filter(|l| !l.starts_with('#')).collect();
    assert_eq!(body, ["series,b,scenario_hash,seed"]);
    assert!(text.contains("\"scenario\":{"));
}

#[test]
fn bad_inputs_exit_nonzero() {
    assert_eq!(bin(&["sweep", "no-such-preset"]).status.code(), Some(2));
    assert_eq!(bin(&["ee", "fig5"]).status.code(), Some(2));
    assert!(!bin(&["sweep", "fig3a", "--format", "xml"]).status.success());
}

#[test]
fn ee_reports_optimal_bits() {
    let o = bin(&["ee", "fig7a"]);
    assert!(o.status.success());
    let text = stdout(&o);
    let mut lines = text.lines();
    assert_eq!(
        lines.next(),
        Some("K_dB,b_opt,ee_bits_per_joule,sum_se,power_w")
    );
    assert!(lines.next().unwrap().starts_with("0,3,"));
}

#[test]
fn corrupted_validation_fails_with_exit_code() {
    let o = bin(&[
        "validate",
        "--realizations",
        "300",
        "--inject-kappa",
        "2=0.03",
    ]);
    assert_eq!(o.status.code(), Some(1));
    let text = stdout(&o);
    let worst = text.lines().find(|l| l.starts_with("worst:")).unwrap();
    assert!(worst.contains("quantization"), "{worst}");
    assert!(text.trim_end().ends_with("FAIL"));
}
