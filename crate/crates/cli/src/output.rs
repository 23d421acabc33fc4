use std::io::Write;
use std::path::{Path, PathBuf};

use clap::ValueEnum;
use eapkit::experiment::BoundResult;
use serde_json::{json, Value};
use tempfile::NamedTempFile;

use crate::error::{CliError, CliResult};

/// Version tag carried by every JSON record and CSV row.
pub const SCHEMA: &str = "eapkit/1";

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

/// Provenance attached to every record.
#[derive(Debug, Clone, Copy)]
pub struct Manifest {
    pub g: f64,
    pub seed: Option<u64>,
}

pub fn record(command: &str, manifest: Manifest, result: Value, inputs: Value) -> Value {
    json!({
        "schema": SCHEMA,
        "command": command,
        "g": manifest.g,
        "seed": manifest.seed,
        "version": env!("CARGO_PKG_VERSION"),
        "result": result,
        "inputs": inputs,
    })
}

pub fn to_json(value: &Value) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("JSON values always serialize");
    s.push('\n');
    s
}

pub const BOUND_HEADER: [&str; 8] = [
    "schema",
    "command",
    "parameter",
    "central",
    "uncertainty",
    "second_order_uncertainty",
    "formula_id",
    "inputs_json",
];

pub fn bound_csv(command: &str, bounds: &[BoundResult]) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(BOUND_HEADER).expect("in-memory write");
    for b in bounds {
        let parameter = serde_json::to_value(b.parameter).expect("parameter serializes");
        w.write_record([
            SCHEMA.to_string(),
            command.to_string(),
            parameter.as_str().unwrap_or_default().to_string(),
            b.central.to_string(),
            b.uncertainty.to_string(),
            b.second_order_uncertainty.to_string(),
            b.formula_id.clone(),
            b.inputs.to_string(),
        ])
        .expect("in-memory write");
    }
    finish(w)
}

/// A CSV table of plain string cells.
pub fn table_csv<I, R>(header: &[&str], rows: I) -> String
where
    I: IntoIterator<Item = R>,
    R: IntoIterator<Item = String>,
{
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(header).expect("in-memory write");
    for row in rows {
        w.write_record(row).expect("in-memory write");
    }
    finish(w)
}

fn finish(w: csv::Writer<Vec<u8>>) -> String {
    let bytes = w.into_inner().expect("in-memory flush");
    String::from_utf8(bytes).expect("CSV cells are UTF-8")
}

/// Writes `contents` to `dir/name` through a temporary file in the same
/// directory, so readers never see a partial file.
pub fn write_atomic(dir: &Path, name: &str, contents: &[u8]) -> CliResult<PathBuf> {
    std::fs::create_dir_all(dir).map_err(|e| CliError::io(dir, e))?;
    let target = dir.join(name);
    let mut tmp = NamedTempFile::new_in(dir).map_err(|e| CliError::io(dir, e))?;
    tmp.write_all(contents).map_err(|e| CliError::io(tmp.path(), e))?;
    tmp.flush().map_err(|e| CliError::io(tmp.path(), e))?;
    tmp.persist(&target).map_err(|e| CliError::io(&target, e.error))?;
    Ok(target)
}
