//! Orbital overlap and binding-energy estimate for a diatomic pair.
//!
//! Each orbital falls off as `e^{−r/α}`; the product of two such orbitals
//! centred a distance `r` apart decays with the combined length `α_eff`.

use crate::error::{positive, Error, Result};

/// `α₁α₂/(α₁ + α₂)`.
pub fn alpha_eff(alpha1: f64, alpha2: f64) -> Result<f64> {
    positive("alpha1", alpha1)?;
    positive("alpha2", alpha2)?;
    Ok(alpha1 * alpha2 / (alpha1 + alpha2))
}

/// `e^{−r/α_eff}`.
pub fn overlap(r: f64, alpha1: f64, alpha2: f64) -> Result<f64> {
    let a = alpha_eff(alpha1, alpha2)?;
    if !(r >= 0.0 && r.is_finite()) {
        return Err(Error::InvalidInput(format!("distance must be non-negative, got {r}")));
    }
    Ok((-r / a).exp())
}

/// `E_b = E₀·e^{−r/α_eff}`.
pub fn binding_energy(r: f64, e0: f64, alpha_eff: f64) -> Result<f64> {
    positive("E0", e0)?;
    positive("alpha_eff", alpha_eff)?;
    if !(r >= 0.0 && r.is_finite()) {
        return Err(Error::InvalidInput(format!("distance must be non-negative, got {r}")));
    }
    Ok(e0 * (-r / alpha_eff).exp())
}

/// Distance at which the binding energy falls to `e_b`: `−ln(E_b/E₀)·α_eff`.
pub fn binding_distance(e_b: f64, e0: f64, alpha_eff: f64) -> Result<f64> {
    positive("E_b", e_b)?;
    positive("E0", e0)?;
    positive("alpha_eff", alpha_eff)?;
    if e_b >= e0 {
        return Err(Error::Precondition(format!(
            "binding energy {e_b:e} J is not below the scale {e0:e} J"
        )));
    }
    Ok(-(e_b / e0).ln() * alpha_eff)
}
