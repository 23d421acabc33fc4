//! Scenario files: one TOML section per command, e.g. `[slab]` or `[sq_bound]`.

use std::fs;
use std::path::Path;

use eapkit::constants::photon_energy;
use eapkit::experiment::{material_lookup, CavendishNullConfig, CavendishStandardConfig, Measured, SlabConfig};
use eapkit::quantum::{CMatrix, Complex, InternalState, SourceModel, SqScenario};
use eapkit::simulation::NBodySystem;
use eapkit::{Body, Vec3};
use nalgebra::DVector;
use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};

use crate::error::{CliError, CliResult};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Command {
    CavendishNull,
    CavendishStandard,
    Slab,
    Nbody,
    QuantumClock,
    SqBound,
    Overlap,
}

impl Command {
    pub const ALL: [Command; 7] = [
        Command::CavendishNull,
        Command::CavendishStandard,
        Command::Slab,
        Command::Nbody,
        Command::QuantumClock,
        Command::SqBound,
        Command::Overlap,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Command::CavendishNull => "cavendish-null",
            Command::CavendishStandard => "cavendish-standard",
            Command::Slab => "slab",
            Command::Nbody => "nbody",
            Command::QuantumClock => "quantum-clock",
            Command::SqBound => "sq-bound",
            Command::Overlap => "overlap",
        }
    }

    /// The TOML section holding this command's inputs.
    pub fn section(self) -> &'static str {
        match self {
            Command::CavendishNull => "cavendish_null",
            Command::CavendishStandard => "cavendish_standard",
            Command::Slab => "slab",
            Command::Nbody => "nbody",
            Command::QuantumClock => "quantum_clock",
            Command::SqBound => "sq_bound",
            Command::Overlap => "overlap",
        }
    }

    pub fn from_section(section: &str) -> Option<Command> {
        Command::ALL.into_iter().find(|c| c.section() == section)
    }
}

pub fn load(path: &Path) -> CliResult<toml::Table> {
    let text = fs::read_to_string(path).map_err(|e| CliError::io(path, e))?;
    parse(&text).map_err(|e| CliError::config(format!("{}: {e}", path.display())))
}

pub fn parse(text: &str) -> Result<toml::Table, String> {
    text.parse::<toml::Table>().map_err(|e| e.message().to_string())
}

pub fn section<T: DeserializeOwned>(table: &toml::Table, command: Command) -> CliResult<T> {
    let name = command.section();
    let value = table
        .get(name)
        .ok_or_else(|| CliError::config(format!("missing section [{name}]")))?;
    value
        .clone()
        .try_into()
        .map_err(|e: toml::de::Error| CliError::config(format!("[{name}]: {}", e.message())))
}

/// `[slab]`; densities may be given directly or looked up from `materials`.
#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SlabInput {
    pub rho1: Option<f64>,
    pub rho2: Option<f64>,
    pub materials: Option<[String; 2]>,
    pub thickness: f64,
    pub length: f64,
    pub width: f64,
    pub resolution: f64,
    #[serde(default)]
    pub measured_acceleration: f64,
}

impl SlabInput {
    pub fn resolve(self) -> CliResult<SlabConfig> {
        let density = |given: Option<f64>, idx: usize, key: &str| -> CliResult<f64> {
            match (given, &self.materials) {
                (Some(rho), _) => Ok(rho),
                (None, Some(m)) => Ok(material_lookup(&m[idx])?),
                (None, None) => Err(CliError::config(format!(
                    "[slab]: missing key `{key}` (or `materials`)"
                ))),
            }
        };
        Ok(SlabConfig {
            rho1: density(self.rho1, 0, "rho1")?,
            rho2: density(self.rho2, 1, "rho2")?,
            thickness: self.thickness,
            length: self.length,
            width: self.width,
            resolution: self.resolution,
            measured_acceleration: self.measured_acceleration,
            materials: self.materials.clone().unwrap_or_default(),
        })
    }
}

pub fn cavendish_null(table: &toml::Table) -> CliResult<CavendishNullConfig> {
    section(table, Command::CavendishNull)
}

/// `[cavendish_standard]` plus an optional `g_reference` (defaults to the
/// run's `G`, exact).
pub fn cavendish_standard(table: &toml::Table, g: f64) -> CliResult<(CavendishStandardConfig, Measured)> {
    let mut raw: toml::Table = section(table, Command::CavendishStandard)?;
    let g_reference = match raw.remove("g_reference") {
        Some(v) => v
            .try_into()
            .map_err(|e: toml::de::Error| CliError::config(format!("[cavendish_standard]: g_reference: {}", e.message())))?,
        None => Measured::exact(g),
    };
    let mut wrapped = toml::Table::new();
    wrapped.insert(Command::CavendishStandard.section().into(), toml::Value::Table(raw));
    Ok((section(&wrapped, Command::CavendishStandard)?, g_reference))
}

/// `[sq_bound]`; the transition energy may be given as a photon wavelength.
#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SqInput {
    pub clock_mass: f64,
    pub partner_mass: f64,
    pub separation: f64,
    pub transition_energy: Option<f64>,
    pub wavelength: Option<f64>,
    #[serde(default = "one")]
    pub clock_count: f64,
    pub resolution: f64,
    #[serde(default)]
    pub measured_acceleration: f64,
}

fn one() -> f64 {
    1.0
}

impl SqInput {
    pub fn resolve(self) -> CliResult<SqScenario> {
        let transition_energy = match (self.transition_energy, self.wavelength) {
            (Some(e), None) => e,
            (None, Some(l)) => photon_energy(l),
            (Some(_), Some(_)) => {
                return Err(CliError::config(
                    "[sq_bound]: give only one of `transition_energy` and `wavelength`",
                ))
            }
            (None, None) => {
                return Err(CliError::config(
                    "[sq_bound]: missing key `transition_energy` (or `wavelength`)",
                ))
            }
        };
        Ok(SqScenario {
            clock_mass: self.clock_mass,
            partner_mass: self.partner_mass,
            separation: self.separation,
            transition_energy,
            clock_count: self.clock_count,
            resolution: self.resolution,
            measured_acceleration: self.measured_acceleration,
        })
    }
}

/// `[overlap]`: orbital lengths and distance, optionally a binding energy
/// and its scale for the inverse relation. All SI.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OverlapInput {
    pub alpha1: f64,
    pub alpha2: f64,
    pub distance: f64,
    pub binding_energy: Option<f64>,
    pub energy_scale: Option<f64>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BodyInput {
    pub passive_mass: f64,
    /// Defaults to the passive mass.
    pub active_mass: Option<f64>,
    pub position: [f64; 3],
    #[serde(default)]
    pub velocity: [f64; 3],
    #[serde(default)]
    pub material: String,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CmCheckInput {
    Active,
    Passive,
}

/// `[nbody]` with `[[nbody.bodies]]` entries.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct NbodyInput {
    /// Overrides the run's `G` for this system.
    pub g: Option<f64>,
    pub dt: f64,
    pub steps: usize,
    pub bodies: Vec<BodyInput>,
    /// Rigid links as `[i, j]` body index pairs.
    #[serde(default)]
    pub links: Vec<[usize; 2]>,
    pub cm_check: Option<CmCheckInput>,
}

impl NbodyInput {
    pub fn system(&self, g: f64) -> CliResult<NBodySystem> {
        let bodies = self
            .bodies
            .iter()
            .map(|b| {
                Ok(Body::new(b.passive_mass, b.active_mass.unwrap_or(b.passive_mass), Vec3::from(b.position))?
                    .with_velocity(Vec3::from(b.velocity))
                    .with_material(b.material.clone()))
            })
            .collect::<CliResult<Vec<_>>>()?;
        let mut sys = NBodySystem::new(bodies, self.g.unwrap_or(g))?;
        for &[i, j] in &self.links {
            if i >= self.bodies.len() || j >= self.bodies.len() {
                return Err(CliError::config(format!(
                    "[nbody]: links: [{i}, {j}] refers to a missing body"
                )));
            }
            sys = sys.with_rigid_link(i, j)?;
        }
        Ok(sys)
    }
}

/// A Hermitian matrix as a diagonal list, a nested list of real rows, or
/// `{ re = [[...]], im = [[...]] }`.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(untagged)]
pub enum MatrixInput {
    Diagonal(Vec<f64>),
    Real(Vec<Vec<f64>>),
    Complex { re: Vec<Vec<f64>>, im: Option<Vec<Vec<f64>>> },
}

impl MatrixInput {
    pub fn matrix(&self, key: &str) -> CliResult<CMatrix> {
        let square = |rows: &[Vec<f64>]| -> CliResult<usize> {
            let n = rows.len();
            if n == 0 || rows.iter().any(|r| r.len() != n) {
                return Err(CliError::config(format!("[quantum_clock]: `{key}` must be a non-empty square matrix")));
            }
            Ok(n)
        };
        match self {
            MatrixInput::Diagonal(d) if d.is_empty() => {
                Err(CliError::config(format!("[quantum_clock]: `{key}` is empty")))
            }
            MatrixInput::Diagonal(d) => Ok(eapkit::quantum::diagonal(d)),
            MatrixInput::Real(rows) => {
                let n = square(rows)?;
                Ok(CMatrix::from_fn(n, n, |i, j| Complex::new(rows[i][j], 0.0)))
            }
            MatrixInput::Complex { re, im } => {
                let n = square(re)?;
                if let Some(im) = im {
                    if square(im)? != n {
                        return Err(CliError::config(format!("[quantum_clock]: `{key}.im` does not match `{key}.re`")));
                    }
                }
                Ok(CMatrix::from_fn(n, n, |i, j| {
                    Complex::new(re[i][j], im.as_ref().map_or(0.0, |m| m[i][j]))
                }))
            }
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ModelInput {
    OperatorIdentity,
    OperatorCustom,
    ExpectationValue,
    NullSuperposition,
    Noncommuting,
}

/// `[quantum_clock]`.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct QuantumClockInput {
    pub clock_mass: f64,
    pub partner_mass: f64,
    pub separation: f64,
    /// Passive internal energy of the clock, J.
    pub passive_energy: MatrixInput,
    pub model: ModelInput,
    /// Required by `operator_custom` and `noncommuting`; optional expectation
    /// base for `expectation_value`.
    pub active_energy: Option<MatrixInput>,
    pub state: Vec<f64>,
    pub state_imag: Option<Vec<f64>>,
    /// Rescale `state` to unit norm instead of rejecting it.
    #[serde(default)]
    pub normalize: bool,
}

impl QuantumClockInput {
    pub fn resolve(&self) -> CliResult<(CMatrix, SourceModel, InternalState)> {
        let passive = self.passive_energy.matrix("passive_energy")?;
        let active = self.active_energy.as_ref().map(|m| m.matrix("active_energy")).transpose()?;
        let model = match (self.model, active) {
            (ModelInput::OperatorIdentity, _) => SourceModel::OperatorIdentity,
            (ModelInput::NullSuperposition, _) => SourceModel::NullSuperposition,
            (ModelInput::ExpectationValue, base) => SourceModel::ExpectationValue { base },
            (ModelInput::OperatorCustom, Some(m)) => SourceModel::OperatorCustom(m),
            (ModelInput::Noncommuting, Some(m)) => SourceModel::Noncommuting(m),
            (_, None) => {
                return Err(CliError::config(
                    "[quantum_clock]: missing key `active_energy` required by this model",
                ))
            }
        };
        let n = self.state.len();
        let imag = match &self.state_imag {
            Some(v) if v.len() != n => {
                return Err(CliError::config("[quantum_clock]: `state_imag` length differs from `state`"))
            }
            Some(v) => v.clone(),
            None => vec![0.0; n],
        };
        let amps = DVector::from_fn(n, |i, _| Complex::new(self.state[i], imag[i]));
        let state = if self.normalize {
            InternalState::normalized(amps)?
        } else {
            InternalState::new(amps)?
        };
        Ok((passive, model, state))
    }
}
