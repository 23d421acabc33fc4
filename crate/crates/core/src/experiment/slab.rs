//! Two bonded thin films of different material falling freely.
//!
//! The films share the footprint `b × c` and together have thickness `a`.
//! The self-acceleration used here is the closed-form estimate
//! `|ẍ| = S·G·ρ₁ρ₂/(ρ₁ + ρ₂)·b·c/a`.

use serde::{Deserialize, Serialize};

use super::{material_lookup, BoundResult, Parameter};
use crate::error::{positive, Result};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SlabConfig {
    pub rho1: f64,
    pub rho2: f64,
    /// Total thickness `a`, m.
    pub thickness: f64,
    /// `b`, m.
    pub length: f64,
    /// `c`, m.
    pub width: f64,
    /// Acceleration resolution, m/s².
    pub resolution: f64,
    /// Observed self-acceleration, m/s². Zero for a null result.
    #[serde(default)]
    pub measured_acceleration: f64,
    #[serde(default)]
    pub materials: [String; 2],
}

impl SlabConfig {
    pub fn from_materials(
        materials: [&str; 2],
        thickness: f64,
        length: f64,
        width: f64,
        resolution: f64,
    ) -> Result<Self> {
        Ok(Self {
            rho1: material_lookup(materials[0])?,
            rho2: material_lookup(materials[1])?,
            thickness,
            length,
            width,
            resolution,
            measured_acceleration: 0.0,
            materials: materials.map(String::from),
        })
    }

    pub fn validate(&self) -> Result<()> {
        positive("rho1", self.rho1)?;
        positive("rho2", self.rho2)?;
        positive("thickness", self.thickness)?;
        positive("length", self.length)?;
        positive("width", self.width)?;
        positive("resolution", self.resolution)?;
        if let Some(w) = self.thin_film_warning() {
            log::warn!("{w}");
        }
        Ok(())
    }

    /// Set when the film is not thin (`a > min(b, c)/100`).
    pub fn thin_film_warning(&self) -> Option<String> {
        let lateral = self.length.min(self.width);
        (self.thickness > lateral / 100.0).then(|| {
            format!(
                "thickness {} m exceeds 1/100 of the lateral size {} m; thin-film formula is unreliable",
                self.thickness, lateral
            )
        })
    }

    fn coupling(&self, g: f64) -> f64 {
        g * self.rho1 * self.rho2 / (self.rho1 + self.rho2) * self.length * self.width / self.thickness
    }
}

pub fn slab_self_acceleration(cfg: &SlabConfig, s: f64, g: f64) -> Result<f64> {
    cfg.validate()?;
    Ok(s * cfg.coupling(g))
}

/// `S = a·ẍ / (G·ρ₁ρ₂/(ρ₁+ρ₂)·b·c)`, with the resolution as the uncertainty.
pub fn invert_s_slab(cfg: &SlabConfig, g: f64) -> Result<BoundResult> {
    cfg.validate()?;
    positive("G", g)?;
    let k = cfg.coupling(g);
    Ok(BoundResult {
        parameter: Parameter::S,
        central: cfg.measured_acceleration / k,
        uncertainty: cfg.resolution / k,
        second_order_uncertainty: 0.0,
        formula_id: "slab/S=accel*a/(G*rho_eff*b*c)".into(),
        inputs: serde_json::to_value(cfg).expect("config serializes"),
    })
}
