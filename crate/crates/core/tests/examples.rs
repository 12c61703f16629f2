// Every example compiles as a module here and runs to completion.

mod sum_se_vs_antennas {
    include!(concat!(
        env!("CARGO_MANIFEST_DIR"),
        "/examples/sum_se_vs_antennas.rs"
    ));
}

mod power_scaling {
    include!(concat!(
        env!("CARGO_MANIFEST_DIR"),
        "/examples/power_scaling.rs"
    ));
}

mod k_convergence {
    include!(concat!(
        env!("CARGO_MANIFEST_DIR"),
        "/examples/k_convergence.rs"
    ));
}

mod full_vs_half_duplex {
    include!(concat!(
        env!("CARGO_MANIFEST_DIR"),
        "/examples/full_vs_half_duplex.rs"
    ));
}

mod ee_optimal_bits {
    include!(concat!(
        env!("CARGO_MANIFEST_DIR"),
        "/examples/ee_optimal_bits.rs"
    ));
}

mod ee_se_frontier {
    include!(concat!(
        env!("CARGO_MANIFEST_DIR"),
        "/examples/ee_se_frontier.rs"
    ));
}

mod validate_closed_forms {
    include!(concat!(
        env!("CARGO_MANIFEST_DIR"),
        "/examples/validate_closed_forms.rs"
    ));
}

mod moment_oracle {
    include!(concat!(
        env!("CARGO_MANIFEST_DIR"),
        "/examples/moment_oracle.rs"
    ));
}

mod quantizer_aqnm {
    include!(concat!(
        env!("CARGO_MANIFEST_DIR"),
        "/examples/quantizer_aqnm.rs"
    ));
}

mod scenario_file {
    include!(concat!(
        env!("CARGO_MANIFEST_DIR"),
        "/examples/scenario_file.rs"
    ));
}

#[test]
fn sum_se_vs_antennas_runs() {
    sum_se_vs_antennas::main().expect("sum_se_vs_antennas example runs");
}

#[test]
fn power_scaling_runs() {
    power_scaling::main().expect("power_scaling example runs");
}

#[test]
fn k_convergence_runs() {
    k_convergence::main().expect("k_convergence example runs");
}

#[test]
fn full_vs_half_duplex_runs() {
    full_vs_half_duplex::main().expect("full_vs_half_duplex example runs");
}

#[test]
fn ee_optimal_bits_runs() {
    ee_optimal_bits::main().expect("ee_optimal_bits example runs");
}

#[test]
fn ee_se_frontier_runs() {
    ee_se_frontier::main().expect("ee_se_frontier example runs");
}

#[test]
fn validate_closed_forms_runs() {
    validate_closed_forms::main().expect("validate_closed_forms example runs");
}

#[test]
fn moment_oracle_runs() {
    moment_oracle::main().expect("moment_oracle example runs");
}

#[test]
fn quantizer_aqnm_runs() {
    quantizer_aqnm::main().expect("quantizer_aqnm example runs");
}

#[test]
fn scenario_file_runs() {
    scenario_file::main().expect("scenario_file example runs");
}
