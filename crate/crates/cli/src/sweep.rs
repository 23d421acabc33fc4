//! One-dimensional parameter sweeps over a scenario key.

use std::fmt;
use std::str::FromStr;

use eapkit::experiment::BoundResult;
use rayon::prelude::*;
use serde::Serialize;

use crate::commands::{bound, is_bound};
use crate::config::Command;
use crate::error::{CliError, CliResult};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Scale {
    Linear,
    Log,
}

/// `section.key[.subkey]:min:max:count:linear|log`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SweepSpec {
    pub path: String,
    pub min: f64,
    pub max: f64,
    pub count: usize,
    pub scale: Scale,
}

impl FromStr for SweepSpec {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        let parts: Vec<&str> = s.split(':').collect();
        let [path, min, max, count, scale] = parts[..] else {
            return Err(format!("expected `section.key:min:max:count:linear|log`, got `{s}`"));
        };
        let num = |what: &str, v: &str| -> Result<f64, String> {
            v.parse::<f64>()
                .ok()
                .filter(|x| x.is_finite())
                .ok_or_else(|| format!("sweep {what} `{v}` is not a finite number"))
        };
        let spec = SweepSpec {
            path: path.to_string(),
            min: num("min", min)?,
            max: num("max", max)?,
            count: count
                .parse()
                .map_err(|_| format!("sweep count `{count}` is not a non-negative integer"))?,
            scale: match scale {
                "linear" => Scale::Linear,
                "log" => Scale::Log,
                other => return Err(format!("sweep scale `{other}` is not `linear` or `log`")),
            },
        };
        if !path.contains('.') {
            return Err(format!("sweep path `{path}` needs a section and a key"));
        }
        if spec.count < 2 {
            return Err(format!("sweep count must be at least 2, got {}", spec.count));
        }
        if spec.scale == Scale::Log && !(spec.min > 0.0 && spec.max > 0.0) {
            return Err("log sweep needs positive endpoints".into());
        }
        Ok(spec)
    }
}

impl fmt::Display for SweepSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let scale = match self.scale {
            Scale::Linear => "linear",
            Scale::Log => "log",
        };
        write!(f, "{}:{}:{}:{}:{scale}", self.path, self.min, self.max, self.count)
    }
}

impl SweepSpec {
    /// Grid values; both endpoints are reproduced exactly.
    pub fn grid(&self) -> Vec<f64> {
        let last = (self.count - 1) as f64;
        let mut values: Vec<f64> = (0..self.count)
            .map(|i| {
                let t = i as f64 / last;
                match self.scale {
                    Scale::Linear => self.min + t * (self.max - self.min),
                    Scale::Log => (self.min.ln() + t * (self.max.ln() - self.min.ln())).exp(),
                }
            })
            .collect();
        values[0] = self.min;
        values[self.count - 1] = self.max;
        values
    }

    pub fn command(&self) -> CliResult<Command> {
        let section = self.path.split('.').next().unwrap_or_default();
        let command = Command::from_section(section)
            .ok_or_else(|| CliError::config(format!("sweep path `{}`: unknown section [{section}]", self.path)))?;
        if !is_bound(command) {
            return Err(CliError::config(format!(
                "sweep path `{}`: `{}` does not produce a bound",
                self.path,
                command.name()
            )));
        }
        Ok(command)
    }
}

/// The scenario with the value at `path` replaced.
pub fn with_value(table: &toml::Table, path: &str, value: f64) -> CliResult<toml::Table> {
    let mut out = table.clone();
    let keys: Vec<&str> = path.split('.').collect();
    let (leaf, parents) = keys.split_last().expect("path has a key");
    let mut cursor = &mut out;
    for key in parents {
        cursor = match cursor.get_mut(*key) {
            Some(toml::Value::Table(t)) => t,
            _ => return Err(CliError::config(format!("sweep path `{path}`: no table `{key}`"))),
        };
    }
    match cursor.get_mut(*leaf) {
        Some(v @ (toml::Value::Float(_) | toml::Value::Integer(_))) => *v = toml::Value::Float(value),
        Some(_) => return Err(CliError::config(format!("sweep path `{path}` is not a number"))),
        None => return Err(CliError::config(format!("sweep path `{path}`: no key `{leaf}`"))),
    }
    Ok(out)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SweepPoint {
    pub value: f64,
    pub bound: BoundResult,
}

/// Evaluates every grid point in parallel; results keep grid order.
pub fn run(table: &toml::Table, spec: &SweepSpec, g: f64) -> CliResult<(Command, Vec<SweepPoint>)> {
    let command = spec.command()?;
    // check the path once up front so a typo fails before any work
    with_value(table, &spec.path, spec.min)?;
    let points = spec
        .grid()
        .into_par_iter()
        .map(|value| {
            let scenario = with_value(table, &spec.path, value)?;
            Ok(SweepPoint {
                value,
                bound: bound(command, &scenario, g)?,
            })
        })
        .collect::<CliResult<Vec<_>>>()?;
    Ok((command, points))
}

pub const SWEEP_HEADER: [&str; 9] = [
    "schema",
    "command",
    "swept",
    "value",
    "parameter",
    "central",
    "uncertainty",
    "second_order_uncertainty",
    "formula_id",
];

pub fn csv(command: Command, spec: &SweepSpec, points: &[SweepPoint]) -> String {
    crate::output::table_csv(
        &SWEEP_HEADER,
        points.iter().map(|p| {
            let parameter = serde_json::to_value(p.bound.parameter).expect("parameter serializes");
            vec![
                crate::output::SCHEMA.to_string(),
                command.name().to_string(),
                spec.path.clone(),
                p.value.to_string(),
                parameter.as_str().unwrap_or_default().to_string(),
                p.bound.central.to_string(),
                p.bound.uncertainty.to_string(),
                p.bound.second_order_uncertainty.to_string(),
                p.bound.formula_id.clone(),
            ]
        }),
    )
}
