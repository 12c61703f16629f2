use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};

use fdbackhaul::params::KappaTable;
use fdbackhaul::presets::{preset, presets};
use fdbackhaul::sweep::{optimal_bits_table, run_sweep, Format, SweepSpec};
use fdbackhaul::validate::{validate, ValidateSettings};
use fdbackhaul::{default_scenario, ScenarioFile};

#[derive(Parser)]
#[command(
    version,
    about = "Full-duplex massive-MIMO backhaul with low-resolution ADCs"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Master seed for Monte Carlo draws.
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// Monte Carlo realizations per point.
    #[arg(long, global = true)]
    realizations: Option<usize>,
    /// Output file; stdout when absent.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[arg(long, global = true, value_enum)]
    format: Option<OutFormat>,
}

#[derive(Subcommand)]
enum Command {
    /// Run a sweep from a preset name, a TOML/JSON spec, or a result file's header.
    Sweep { spec: String },
    /// Compare closed forms with Monte Carlo; exits nonzero on any failure.
    Validate {
        /// Scenario TOML; the built-in defaults otherwise.
        #[arg(long)]
        scenario: Option<PathBuf>,
        /// Corrupt one analytic κ entry, as `BITS=KAPPA`.
        #[arg(long, value_name = "BITS=KAPPA")]
        inject_kappa: Option<String>,
        /// Print every check, not just failures.
        #[arg(long)]
        verbose: bool,
    },
    /// List the built-in sweeps.
    Presets,
    /// EE-optimal resolution for each series value of a sweep over b.
    Ee { spec: String },
}

#[derive(Clone, Copy, ValueEnum)]
enum OutFormat {
    Csv,
    Json,
}

impl From<OutFormat> for Format {
    fn from(f: OutFormat) -> Self {
        match f {
            OutFormat::Csv => Format::Csv,
            OutFormat::Json => Format::Json,
        }
    }
}

fn load_spec(arg: &str, cli: &Cli) -> Result<SweepSpec> {
    let mut spec = match preset(arg) {
        Ok(p) => p.spec,
        Err(_) if Path::new(arg).exists() => {
            SweepSpec::load(arg).with_context(|| format!("reading {arg}"))?
        }
        Err(_) => bail!("{arg:?} is neither a preset nor a readable file (see `presets`)"),
    };
    if let Some(seed) = cli.seed {
        spec.mc.seed = seed;
    }
    if let Some(n) = cli.realizations {
        spec.mc.n_realizations = n;
    }
    Ok(spec)
}

fn format_for(cli: &Cli) -> Format {
    match (cli.format, &cli.out) {
        (Some(f), _) => f.into(),
        (None, Some(p)) if p.extension().is_some_and(|e| e == "json") => Format::Json,
        _ => Format::Csv,
    }
}

fn output(cli: &Cli) -> Result<Box<dyn Write>> {
    Ok(match &cli.out {
        Some(p) => Box::new(BufWriter::new(
            File::create(p).with_context(|| format!("creating {}", p.display()))?,
        )),
        None => Box::new(io::stdout().lock()),
    })
}

fn parse_injection(s: &str) -> Result<KappaTable> {
    let (b, k) = s.split_once('=').context("expected BITS=KAPPA")?;
    Ok(KappaTable::STANDARD.with_entry(b.trim().parse()?, k.trim().parse()?)?)
}

fn run(cli: &Cli) -> Result<bool> {
    match &cli.command {
        Command::Presets => {
            let mut w = output(cli)?;
            for p in presets() {
                writeln!(w, "{:<6}  {}", p.name, p.description)?;
            }
            Ok(true)
        }
        Command::Sweep { spec } => {
            let spec = load_spec(spec, cli)?;
            let table = run_sweep(&spec)?;
            table.write(format_for(cli), output(cli)?)?;
            Ok(true)
        }
        Command::Ee { spec } => {
            let spec = load_spec(spec, cli)?;
            let rows = optimal_bits_table(&spec)?;
            let mut w = output(cli)?;
            match format_for(cli) {
                Format::Json => writeln!(w, "{}", serde_json::to_string_pretty(&rows)?)?,
                Format::Csv => {
                    let series = spec.series.as_ref().map_or("series", |s| s.axis.name());
                    let mut csv = csv::Writer::from_writer(w);
                    csv.write_record([series, "b_opt", "ee_bits_per_joule", "sum_se", "power_w"])?;
                    for r in rows {
                        csv.write_record([
                            r.series.map(|v| v.to_string()).unwrap_or_default(),
                            r.bits.to_string(),
                            r.ee_bits_per_joule.to_string(),
                            r.sum_se.to_string(),
                            r.power_w.to_string(),
                        ])?;
                    }
                    csv.flush()?;
                }
            }
            Ok(true)
        }
        Command::Validate {
            scenario,
            inject_kappa,
            verbose,
        } => {
            let scn = match scenario {
                Some(p) => ScenarioFile::from_path(p)?.build()?,
                None => default_scenario(),
            };
            let mut settings = ValidateSettings::default();
            if let Some(seed) = cli.seed {
                settings.mc.seed = seed;
            }
            if let Some(n) = cli.realizations {
                settings.mc.n_realizations = n;
            }
            settings.analytic_kappa = inject_kappa.as_deref().map(parse_injection).transpose()?;
            let report = validate(&scn, &settings)?;
            if let Some(path) = &cli.out {
                std::fs::write(path, serde_json::to_string_pretty(&report)?)?;
            }
            for c in &report.checks {
                if *verbose || !c.passed() {
                    println!("{c}");
                }
            }
            let failed = report.failures().count();
            println!("{} checks, {failed} failed", report.checks.len());
            if let Some(w) = report.worst() {
                println!("worst: {w}");
            }
            println!("{}", if report.passed() { "PASS" } else { "FAIL" });
            Ok(report.passed())
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
