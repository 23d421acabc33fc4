//! Check that a gravitating binary falls toward a distant third body like a
//! point mass located at its *active* center of mass.

use serde::{Deserialize, Serialize};

use super::{step_rk4, NBodySystem, State};
use crate::dynamics::Body;
use crate::error::{Error, Result};
use crate::Vec3;

/// Smallest accepted `|X_cm − x3| / |x12|`.
pub const MIN_SEPARATION_RATIO: f64 = 100.0;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum CmWeighting {
    Active,
    Passive,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CmCheck {
    /// Largest `|R_full − R_ref|` over the run, m.
    pub max_deviation: f64,
    /// `max_deviation / |R(0)|`.
    pub max_relative_deviation: f64,
    pub separation_ratio: f64,
}

pub fn active_cm_check(sys: &NBodySystem, dt: f64, n_steps: usize) -> Result<CmCheck> {
    cm_tracking_check(sys, dt, n_steps, CmWeighting::Active)
}

/// Integrates the three-body system alongside a reference two-body system in
/// which the binary (bodies 0 and 1) is replaced by one point of active mass
/// `m1a + m2a`, started at the binary's weighted CM with that CM's velocity.
/// Returns the largest difference between the binary-CM-to-body-3 vector of
/// the full run and the point-to-body-3 vector of the reference run.
pub fn cm_tracking_check(
    sys: &NBodySystem,
    dt: f64,
    n_steps: usize,
    weighting: CmWeighting,
) -> Result<CmCheck> {
    let bodies = sys.bodies();
    if bodies.len() != 3 || !sys.links().is_empty() {
        return Err(Error::Precondition(
            "cm check needs exactly three bodies and no rigid links".into(),
        ));
    }
    let weights: [f64; 2] = match weighting {
        CmWeighting::Active => [bodies[0].active_mass(), bodies[1].active_mass()],
        CmWeighting::Passive => [bodies[0].passive_mass(), bodies[1].passive_mass()],
    };
    let w_total = weights[0] + weights[1];
    let binary_cm = |v: &[Vec3]| (weights[0] * v[0] + weights[1] * v[1]) / w_total;

    let state = sys.initial_state();
    let x12 = (state.positions[1] - state.positions[0]).norm();
    let r0 = binary_cm(&state.positions) - state.positions[2];
    let ratio = r0.norm() / x12;
    if ratio.is_nan() || ratio < MIN_SEPARATION_RATIO {
        return Err(Error::Precondition(format!(
            "third body too close: |X_cm - x3| / |x12| = {ratio:.3} < {MIN_SEPARATION_RATIO}"
        )));
    }

    let active_total = bodies[0].active_mass() + bodies[1].active_mass();
    let passive_total = bodies[0].passive_mass() + bodies[1].passive_mass();
    let point = Body::new(passive_total, active_total, binary_cm(&state.positions))?
        .with_velocity(binary_cm(&state.velocities));
    let reference = NBodySystem::new(vec![point, bodies[2].clone()], sys.g())?;

    let mut full = state;
    let mut refs: State = reference.initial_state();
    let mut max_deviation = 0.0_f64;
    for step in 1..=n_steps {
        let wrap = |e| Error::Step {
            step,
            source: Box::new(e),
        };
        full = step_rk4(sys, &full, dt).map_err(wrap)?;
        refs = step_rk4(&reference, &refs, dt).map_err(wrap)?;
        let r_full = binary_cm(&full.positions) - full.positions[2];
        let r_ref = refs.positions[0] - refs.positions[1];
        max_deviation = max_deviation.max((r_full - r_ref).norm());
    }
    Ok(CmCheck {
        max_deviation,
        max_relative_deviation: max_deviation / r0.norm(),
        separation_ratio: ratio,
    })
}
