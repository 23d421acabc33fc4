//! Torsion-balance configurations.
//!
//! *Null*: two source masses of different material but identical passive mass
//! sit on opposite sides of the balance at distance `R` from the test masses.
//! Newtonian torques cancel and what remains is proportional to `S₁₂`.
//!
//! *Standard*: both sources pull in the same sense at distance `|r_M − d|`,
//! so the balance measures an effective `G₁₂ = G(1 − σ₁₂)`.
//!
//! In both the moment of inertia is `I = m·d²`.

use serde::{Deserialize, Serialize};

use super::{BoundResult, Measured, Monomial, Parameter};
use crate::dynamics::{reduced_mass, ViolationParams};
use crate::error::{positive, Result};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CavendishNullConfig {
    /// Each test mass, kg.
    pub test_mass: f64,
    /// Arm length `d`, m.
    pub arm: Measured,
    /// Source distance `R`, m.
    pub source_distance: Measured,
    /// Passive mass of each (matched) source, kg.
    pub source_mass: Measured,
    /// Measured `φ̈`, rad/s².
    pub angular_acceleration: Measured,
    #[serde(default)]
    pub materials: [String; 2],
}

impl CavendishNullConfig {
    pub fn validate(&self) -> Result<()> {
        positive("test mass", self.test_mass)?;
        self.arm.require_positive("arm length")?;
        self.source_distance.require_positive("source distance")?;
        self.source_mass.require_positive("source passive mass")?;
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CavendishStandardConfig {
    pub test_mass: f64,
    pub arm: Measured,
    /// `|r_M − d|`, m.
    pub source_offset: Measured,
    /// Passive masses `M1p`, `M2p`, kg.
    pub source_masses: [Measured; 2],
    pub angular_acceleration: Measured,
    #[serde(default)]
    pub materials: [String; 2],
}

impl CavendishStandardConfig {
    pub fn validate(&self) -> Result<()> {
        positive("test mass", self.test_mass)?;
        self.arm.require_positive("arm length")?;
        self.source_offset.require_positive("source offset")?;
        positive("total source mass", self.total_source_mass().value)?;
        for m in &self.source_masses {
            m.require_positive("source passive mass")?;
        }
        Ok(())
    }

    pub fn total_source_mass(&self) -> Measured {
        let [a, b] = self.source_masses;
        Measured {
            value: a.value + b.value,
            sigma_abs: a.sigma_abs.hypot(b.sigma_abs),
        }
    }
}

/// Torque on the balance for arbitrary source passive masses:
/// `G·m·d/R² · [(1 − σ)(M1p − M2p) + 2μS]`, which is `G·m·d·(M1a − M2a)/R²`.
/// Positive means toward source 1.
pub fn cavendish_torque(
    test_mass: f64,
    arm: f64,
    source_distance: f64,
    m1p: f64,
    m2p: f64,
    params: ViolationParams,
    g: f64,
) -> f64 {
    let mu = reduced_mass(m1p, m2p);
    g * test_mass * arm / (source_distance * source_distance)
        * ((1.0 - params.sigma) * (m1p - m2p) + 2.0 * mu * params.s)
}

/// Torque for the matched-source null configuration; `G·m·d·M_p·S/R²`.
pub fn null_cavendish_torque(cfg: &CavendishNullConfig, assumed: ViolationParams, g: f64) -> Result<f64> {
    cfg.validate()?;
    let mp = cfg.source_mass.value;
    Ok(cavendish_torque(
        cfg.test_mass,
        cfg.arm.value,
        cfg.source_distance.value,
        mp,
        mp,
        assumed,
        g,
    ))
}

/// `φ̈ = τ / (m·d²)` for the null configuration.
pub fn null_angular_acceleration(cfg: &CavendishNullConfig, assumed: ViolationParams, g: f64) -> Result<f64> {
    let d = cfg.arm.value;
    Ok(null_cavendish_torque(cfg, assumed, g)? / (cfg.test_mass * d * d))
}

/// `S₁₂ = φ̈·d·R² / (G·M_p)`.
pub fn invert_s_null(cfg: &CavendishNullConfig, g: f64) -> Result<BoundResult> {
    cfg.validate()?;
    positive("G", g)?;
    let f = Monomial::new(1.0 / g)
        .factor(cfg.angular_acceleration, 1)
        .factor(cfg.arm, 1)
        .factor(cfg.source_distance, 2)
        .factor(cfg.source_mass, -1);
    Ok(BoundResult {
        parameter: Parameter::S,
        central: f.value(),
        uncertainty: f.first_order_sigma(),
        second_order_uncertainty: f.second_order_sigma(),
        formula_id: "cavendish-null/S=phi_ddot*d*R^2/(G*Mp)".into(),
        inputs: serde_json::to_value(cfg).expect("config serializes"),
    })
}

/// `φ̈ = G(1 − σ)(M1p + M2p) / (d·|r_M − d|²)` for the standard configuration.
pub fn standard_angular_acceleration(cfg: &CavendishStandardConfig, sigma: f64, g: f64) -> Result<f64> {
    cfg.validate()?;
    let l = cfg.source_offset.value;
    Ok(g * (1.0 - sigma) * cfg.total_source_mass().value / (cfg.arm.value * l * l))
}

/// `σ₁₂ = 1 − G₁₂/G_ref` with `G₁₂ = φ̈·d·|r_M − d|² / (M1p + M2p)`.
pub fn invert_sigma_standard(cfg: &CavendishStandardConfig, g_reference: Measured) -> Result<BoundResult> {
    cfg.validate()?;
    g_reference.require_positive("reference G")?;
    let ratio = Monomial::new(1.0)
        .factor(cfg.angular_acceleration, 1)
        .factor(cfg.arm, 1)
        .factor(cfg.source_offset, 2)
        .factor(cfg.total_source_mass(), -1)
        .factor(g_reference, -1);
    let mut inputs = serde_json::to_value(cfg).expect("config serializes");
    inputs["g_reference"] = serde_json::to_value(g_reference).expect("measured serializes");
    Ok(BoundResult {
        parameter: Parameter::Sigma,
        central: 1.0 - ratio.value(),
        uncertainty: ratio.first_order_sigma(),
        second_order_uncertainty: ratio.second_order_sigma(),
        formula_id: "cavendish-standard/sigma=1-phi_ddot*d*L^2/((M1p+M2p)*G_ref)".into(),
        inputs,
    })
}
