use serde::{Deserialize, Serialize};

use crate::constants::S_LLR;
use crate::dynamics::{reduced_mass, separation, violation_params, Body};
use crate::error::Result;
use crate::Vec3;

/// Whole-body acceleration of two rigidly linked bodies, `S·G·μ·x/|x|³` with
/// `x = x1 − x2` and `μ` the passive reduced mass.
pub fn rigid_self_acceleration(b1: &Body, b2: &Body, g: f64) -> Result<Vec3> {
    let (x, r) = separation(&b1.position, &b2.position, (0, 1))?;
    let s = violation_params(b1, b2).s;
    let mu = reduced_mass(b1.passive_mass(), b2.passive_mass());
    Ok(s * g * mu / (r * r * r) * x)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MoonSelfAcceleration {
    pub acceleration: Vec3,
    /// Stored lunar-laser-ranging bound; not recomputed here.
    pub reference_s: f64,
    /// `|ẍ|` this geometry would have at `S = reference_s`.
    pub reference_acceleration: f64,
}

/// Two-component (core/mantle) model of a tidally locked body.
pub fn moon_bvb_acceleration(core: &Body, mantle: &Body, g: f64) -> Result<MoonSelfAcceleration> {
    let acceleration = rigid_self_acceleration(core, mantle, g)?;
    let r = (core.position - mantle.position).norm();
    let mu = reduced_mass(core.passive_mass(), mantle.passive_mass());
    Ok(MoonSelfAcceleration {
        acceleration,
        reference_s: S_LLR,
        reference_acceleration: S_LLR * g * mu / (r * r),
    })
}
