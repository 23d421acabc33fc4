//! `eapkit`: run violation-parameter scenarios from TOML files.

mod commands;
mod config;
mod error;
mod output;
mod sweep;
mod tables;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use log::info;
use serde_json::json;

use crate::config::Command;
use crate::error::{CliError, CliResult};
use crate::output::{record, to_json, write_atomic, Format, Manifest};
use crate::sweep::SweepSpec;

#[derive(Parser)]
#[command(name = "eapkit", version, about = "Bounds and simulations for active/passive mass violations")]
struct Cli {
    #[command(subcommand)]
    command: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Bound S from a null torsion balance.
    CavendishNull(RunArgs),
    /// Bound sigma from a conventional torsion balance.
    CavendishStandard(RunArgs),
    /// Bound S from two thin films in contact.
    Slab(RunArgs),
    /// Integrate an N-body system, optionally with rigid links.
    Nbody(RunArgs),
    /// Self-acceleration branches of a clock bound to a partner.
    QuantumClock(RunArgs),
    /// Bound S_q from a clock self-acceleration search.
    SqBound(RunArgs),
    /// Orbital overlap and binding distance.
    Overlap(RunArgs),
    /// Evaluate a bound over a grid of one scenario value.
    Sweep(SweepArgs),
    /// Reproduce the reference bounds from the bundled scenarios.
    Tables(TablesArgs),
}

#[derive(Args)]
struct RunArgs {
    /// Scenario file (TOML).
    #[arg(long)]
    config: PathBuf,
    #[command(flatten)]
    common: Common,
}

#[derive(Args)]
struct SweepArgs {
    #[arg(long)]
    config: PathBuf,
    /// `section.key:min:max:count:linear|log`, e.g. `slab.thickness:1e-9:1e-5:5:log`.
    #[arg(long)]
    sweep: SweepSpec,
    #[command(flatten)]
    common: Common,
}

#[derive(Args)]
struct TablesArgs {
    /// Also write `tables.json`/`tables.csv` into this directory.
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, value_delimiter = ',', default_value = "json,csv")]
    format: Vec<Format>,
    #[arg(long, env = "EAPKIT_G")]
    gravitational_constant: Option<f64>,
}

#[derive(Args)]
struct Common {
    /// Output directory.
    #[arg(long, default_value = ".")]
    out: PathBuf,
    #[arg(long, value_delimiter = ',', default_value = "json,csv", num_args = 1..)]
    format: Vec<Format>,
    /// Recorded in the output; no command draws random numbers.
    #[arg(long)]
    seed: Option<u64>,
    /// Newton's constant, m³/(kg·s²).
    #[arg(long, env = "EAPKIT_G")]
    gravitational_constant: Option<f64>,
}

impl Common {
    fn manifest(&self) -> CliResult<Manifest> {
        Ok(Manifest {
            g: resolve_g(self.gravitational_constant)?,
            seed: self.seed,
        })
    }
}

fn resolve_g(given: Option<f64>) -> CliResult<f64> {
    match given {
        None => Ok(eapkit::constants::G),
        Some(g) if g.is_finite() && g > 0.0 => Ok(g),
        Some(g) => Err(CliError::config(format!("gravitational constant must be positive, got {g}"))),
    }
}

fn write_outputs(common: &Common, stem: &str, json_text: &str, csv_text: &str) -> CliResult<()> {
    for format in &common.format {
        let (name, body) = match format {
            Format::Json => (format!("{stem}.json"), json_text),
            Format::Csv => (format!("{stem}.csv"), csv_text),
        };
        let path = write_atomic(&common.out, &name, body.as_bytes())?;
        info!("wrote {}", path.display());
    }
    Ok(())
}

fn run_scenario(command: Command, args: &RunArgs) -> CliResult<()> {
    let manifest = args.common.manifest()?;
    let table = config::load(&args.config)?;
    let report = commands::run(command, &table, manifest.g)?;
    let rec = record(report.command.name(), manifest, report.result, report.inputs);
    write_outputs(&args.common, command.name(), &to_json(&rec), &report.csv)?;
    println!("{}", report.summary);
    Ok(())
}

fn run_sweep(args: &SweepArgs) -> CliResult<()> {
    let manifest = args.common.manifest()?;
    let table = config::load(&args.config)?;
    let (command, points) = sweep::run(&table, &args.sweep, manifest.g)?;
    let inputs = serde_json::to_value(table.get(command.section()))
        .map_err(|e| CliError::config(e.to_string()))?;
    let result = json!({ "sweep": args.sweep, "points": points });
    let rec = record(&format!("sweep/{}", command.name()), manifest, result, inputs);
    let csv = sweep::csv(command, &args.sweep, &points);
    write_outputs(&args.common, &format!("sweep-{}", command.name()), &to_json(&rec), &csv)?;
    println!("sweep {}: {} points over `{}`", command.name(), points.len(), args.sweep.path);
    Ok(())
}

fn run_tables(args: &TablesArgs) -> CliResult<()> {
    let g = resolve_g(args.gravitational_constant)?;
    let rows = tables::rows(g)?;
    print!("{}", tables::render(&rows));
    if let Some(out) = &args.out {
        let common = Common {
            out: out.clone(),
            format: args.format.clone(),
            seed: None,
            gravitational_constant: Some(g),
        };
        let rec = record("tables", Manifest { g, seed: None }, json!(rows), json!(null));
        write_outputs(&common, "tables", &to_json(&rec), &tables::csv(&rows))?;
    }
    let misses = rows.iter().filter(|r| !r.ok).count();
    if misses > 0 {
        return Err(CliError::Numerical(eapkit::Error::Precondition(format!(
            "{misses} reproduced value(s) outside the accepted range"
        ))));
    }
    Ok(())
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            // usage mistakes share the config exit code
            return if e.use_stderr() { ExitCode::from(1) } else { ExitCode::SUCCESS };
        }
    };
    let result = match &cli.command {
        Cmd::CavendishNull(a) => run_scenario(Command::CavendishNull, a),
        Cmd::CavendishStandard(a) => run_scenario(Command::CavendishStandard, a),
        Cmd::Slab(a) => run_scenario(Command::Slab, a),
        Cmd::Nbody(a) => run_scenario(Command::Nbody, a),
        Cmd::QuantumClock(a) => run_scenario(Command::QuantumClock, a),
        Cmd::SqBound(a) => run_scenario(Command::SqBound, a),
        Cmd::Overlap(a) => run_scenario(Command::Overlap, a),
        Cmd::Sweep(a) => run_sweep(a),
        Cmd::Tables(a) => run_tables(a),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("eapkit: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
