//! One function per subcommand, each turning a parsed scenario into a report.

use eapkit::experiment::{invert_s_null, invert_s_slab, invert_sigma_standard, BoundResult};
use eapkit::quantum::{alpha_eff, binding_distance, clock_self_acceleration, overlap, sq_bound};
use eapkit::simulation::{cm_tracking_check, integrate, CmWeighting};
use log::{info, warn};
use serde_json::{json, Value};

use crate::config::{self, CmCheckInput, Command, NbodyInput, OverlapInput, QuantumClockInput, SlabInput, SqInput};
use crate::error::{CliError, CliResult};
use crate::output::{bound_csv, table_csv};

/// What a command produced, before it is written anywhere.
#[derive(Debug, Clone)]
pub struct Report {
    pub command: Command,
    pub result: Value,
    /// The scenario section as given.
    pub inputs: Value,
    pub csv: String,
    /// One line for the terminal.
    pub summary: String,
}

/// Commands whose result is a single [`BoundResult`]; these can be swept.
pub fn is_bound(command: Command) -> bool {
    matches!(
        command,
        Command::CavendishNull | Command::CavendishStandard | Command::Slab | Command::SqBound
    )
}

pub fn bound(command: Command, table: &toml::Table, g: f64) -> CliResult<BoundResult> {
    match command {
        Command::CavendishNull => Ok(invert_s_null(&config::cavendish_null(table)?, g)?),
        Command::CavendishStandard => {
            let (cfg, g_reference) = config::cavendish_standard(table, g)?;
            Ok(invert_sigma_standard(&cfg, g_reference)?)
        }
        Command::Slab => {
            let cfg = config::section::<SlabInput>(table, command)?.resolve()?;
            if let Some(w) = cfg.thin_film_warning() {
                warn!("{w}");
            }
            Ok(invert_s_slab(&cfg, g)?)
        }
        Command::SqBound => Ok(sq_bound(&config::section::<SqInput>(table, command)?.resolve()?, g)?),
        other => Err(CliError::config(format!(
            "`{}` does not produce a bound",
            other.name()
        ))),
    }
}

pub fn run(command: Command, table: &toml::Table, g: f64) -> CliResult<Report> {
    let inputs = serde_json::to_value(table.get(command.section()))
        .map_err(|e| CliError::config(e.to_string()))?;
    let (result, csv, summary) = match command {
        Command::Nbody => nbody(table, g)?,
        Command::QuantumClock => quantum_clock(table, g)?,
        Command::Overlap => overlap_report(table)?,
        _ => {
            let b = bound(command, table, g)?;
            let summary = format!(
                "{}: {} = {:e} ± {:e}",
                command.name(),
                serde_json::to_value(b.parameter).expect("parameter serializes").as_str().unwrap_or_default(),
                b.central,
                b.uncertainty
            );
            let csv = bound_csv(command.name(), std::slice::from_ref(&b));
            (serde_json::to_value(&b).expect("bound serializes"), csv, summary)
        }
    };
    Ok(Report {
        command,
        result,
        inputs,
        csv,
        summary,
    })
}

fn nbody(table: &toml::Table, g: f64) -> CliResult<(Value, String, String)> {
    let input: NbodyInput = config::section(table, Command::Nbody)?;
    let sys = input.system(g)?;
    info!("integrating {} bodies for {} steps", sys.bodies().len(), input.steps);
    let traj = integrate(&sys, input.dt, input.steps)?;

    let first = traj.diagnostics.first().expect("trajectory has an initial frame");
    let last = traj.diagnostics.last().expect("trajectory has an initial frame");
    let cm_check = input
        .cm_check
        .map(|w| {
            let weighting = match w {
                CmCheckInput::Active => CmWeighting::Active,
                CmCheckInput::Passive => CmWeighting::Passive,
            };
            cm_tracking_check(&sys, input.dt, input.steps, weighting)
        })
        .transpose()?;

    let mut csv = Vec::new();
    traj.write_csv(&mut csv).expect("in-memory write");
    let csv = String::from_utf8(csv).expect("CSV is UTF-8");

    let final_time = *traj.times.last().expect("trajectory has an initial frame");
    let mut summary = format!(
        "nbody: {} frames to t = {final_time:e} s, |Δp| = {:e}",
        traj.len(),
        (last.momentum - first.momentum).norm()
    );
    if let Some(c) = &cm_check {
        summary.push_str(&format!(", cm deviation {:e} relative", c.max_relative_deviation));
    }
    let result = json!({
        "frames": traj.len(),
        "final_time": final_time,
        "initial": first,
        "final": last,
        "momentum_change": (last.momentum - first.momentum),
        "cm_check": cm_check,
    });
    Ok((result, csv, summary))
}

fn quantum_clock(table: &toml::Table, g: f64) -> CliResult<(Value, String, String)> {
    let input: QuantumClockInput = config::section(table, Command::QuantumClock)?;
    let (passive, model, state) = input.resolve()?;
    let r = clock_self_acceleration(
        &passive,
        &model,
        &state,
        input.clock_mass,
        input.partner_mass,
        input.separation,
        g,
    )?;
    let csv = table_csv(
        &["branch", "probability", "acceleration", "s_q"],
        r.branches.iter().enumerate().map(|(i, b)| {
            vec![
                i.to_string(),
                b.probability.to_string(),
                b.acceleration.to_string(),
                r.s_q.get(i).map(f64::to_string).unwrap_or_default(),
            ]
        }),
    );
    let mean = r.mean_acceleration();
    let summary = format!(
        "quantum-clock ({}): {} branch(es), mean acceleration {mean:e} m/s²",
        r.model,
        r.branches.len()
    );
    let mut result = serde_json::to_value(&r).expect("response serializes");
    result["mean_acceleration"] = json!(mean);
    Ok((result, csv, summary))
}

fn overlap_report(table: &toml::Table) -> CliResult<(Value, String, String)> {
    let input: OverlapInput = config::section(table, Command::Overlap)?;
    let a = alpha_eff(input.alpha1, input.alpha2)?;
    let ov = overlap(input.distance, input.alpha1, input.alpha2)?;
    let distance = match (input.binding_energy, input.energy_scale) {
        (Some(e_b), Some(e0)) => Some(binding_distance(e_b, e0, a)?),
        (None, None) => None,
        _ => {
            return Err(CliError::config(
                "[overlap]: `binding_energy` and `energy_scale` go together",
            ))
        }
    };
    let mut rows = vec![vec![
        "overlap".to_string(),
        input.distance.to_string(),
        ov.to_string(),
    ]];
    let mut summary = format!("overlap: alpha_eff = {a:e} m, overlap at {:e} m = {ov:.4}", input.distance);
    if let Some(d) = distance {
        rows.push(vec![
            "binding_distance".to_string(),
            d.to_string(),
            input.binding_energy.expect("checked above").to_string(),
        ]);
        summary.push_str(&format!(", binding distance {d:e} m"));
    }
    let csv = table_csv(&["quantity", "distance", "value"], rows);
    let result = json!({
        "alpha_eff": a,
        "overlap": ov,
        "binding_distance": distance,
    });
    Ok((result, csv, summary))
}
