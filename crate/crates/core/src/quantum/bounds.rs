//! Bounds on the quantum violation parameter from a self-acceleration search.

use serde::{Deserialize, Serialize};

use crate::constants::C;
use crate::error::{positive, Error, Result};
use crate::experiment::{BoundResult, Parameter};

/// An ensemble of `clock_count` clock systems, each bound to a partner at
/// `separation`, observed with the given acceleration resolution.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SqScenario {
    /// kg.
    pub clock_mass: f64,
    /// kg.
    pub partner_mass: f64,
    /// m.
    pub separation: f64,
    /// Mean transition energy in the prepared state, J.
    pub transition_energy: f64,
    pub clock_count: f64,
    /// m/s².
    pub resolution: f64,
    /// m/s²; zero for a null result.
    #[serde(default)]
    pub measured_acceleration: f64,
}

impl SqScenario {
    pub fn validate(&self) -> Result<()> {
        if self.transition_energy == 0.0 {
            return Err(Error::InvalidInput("transition energy is zero".into()));
        }
        positive("clock mass", self.clock_mass)?;
        positive("partner mass", self.partner_mass)?;
        positive("separation", self.separation)?;
        positive("transition energy", self.transition_energy)?;
        positive("resolution", self.resolution)?;
        if !(self.clock_count >= 1.0 && self.clock_count.is_finite()) {
            return Err(Error::InvalidInput(format!(
                "clock count must be at least 1, got {}",
                self.clock_count
            )));
        }
        if !self.measured_acceleration.is_finite() {
            return Err(Error::InvalidInput("measured acceleration is not finite".into()));
        }
        Ok(())
    }

    /// Acceleration magnitude per unit `S_q` of the whole ensemble.
    pub fn coupling(&self, g: f64) -> f64 {
        g * self.clock_count * self.partner_mass * self.transition_energy
            / (C * C * self.separation * self.separation * (self.clock_mass + self.partner_mass))
    }
}

/// `S_q ≲ resolution·c²r²(m₁p + m₂p)/(G·N·m₂p·⟨E_p⟩)`.
pub fn sq_bound(scenario: &SqScenario, g: f64) -> Result<BoundResult> {
    scenario.validate()?;
    positive("G", g)?;
    let k = scenario.coupling(g);
    Ok(BoundResult {
        parameter: Parameter::Sq,
        central: scenario.measured_acceleration / k,
        uncertainty: scenario.resolution / k,
        second_order_uncertainty: 0.0,
        formula_id: "sq-bound/S_q=accel*c^2*r^2*(m1p+m2p)/(G*N*m2p*E)".into(),
        inputs: serde_json::to_value(scenario).expect("scenario serializes"),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constants::{photon_energy, ANGSTROM, G};
    use approx::assert_relative_eq;

    fn na_cs(resolution: f64) -> SqScenario {
        SqScenario {
            clock_mass: 4e-26,
            partner_mass: 2e-25,
            separation: 10.0 * ANGSTROM,
            transition_energy: photon_energy(414e-9),
            clock_count: 1.0,
            resolution,
            measured_acceleration: 0.0,
        }
    }

    #[test]
    fn molecule_bounds() {
        let ground = sq_bound(&na_cs(1e-10), G).unwrap().uncertainty;
        let space = sq_bound(&na_cs(1e-15), G).unwrap().uncertainty;
        assert_relative_eq!(ground, 3.368e17, max_relative = 1e-3);
        assert_relative_eq!(space / ground, 1e-5, max_relative = 1e-12);
    }

    #[test]
    fn zero_energy_is_rejected() {
        let mut s = na_cs(1e-10);
        s.transition_energy = 0.0;
        assert!(matches!(sq_bound(&s, G), Err(Error::InvalidInput(_))));
        s.transition_energy = -1.0;
        assert!(sq_bound(&s, G).is_err());
    }

    #[test]
    fn fewer_than_one_clock_is_rejected() {
        let mut s = na_cs(1e-10);
        s.clock_count = 0.5;
        assert!(sq_bound(&s, G).is_err());
    }

    #[test]
    fn ensemble_scaling() {
        let one = sq_bound(&na_cs(1e-10), G).unwrap().uncertainty;
        let mut s = na_cs(1e-10);
        s.clock_count = 1e6;
        assert_relative_eq!(sq_bound(&s, G).unwrap().uncertainty, one * 1e-6, max_relative = 1e-12);
    }
}
