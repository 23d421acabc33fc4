//! Time-domain integration of EAP-violating N-body systems.
//!
//! The force field is not conservative once `S ≠ 0`, so there is no
//! symplectic structure to exploit; the integrator is classical RK4. Keep the
//! step below 1/1000 of the shortest orbital (or spin) period.
//!
//! Rigid links are enforced twice: distance-constraint forces are solved as
//! multipliers inside every RK4 stage, and positions/velocities are projected
//! back onto the constraint manifold after each full step. Constraint forces
//! act along the link with equal and opposite magnitude, so they never
//! contribute to the net (anomalous) force.

mod cm_check;
mod rigid;
mod trajectory;

pub use cm_check::{active_cm_check, cm_tracking_check, CmCheck, CmWeighting};
pub use rigid::{moon_bvb_acceleration, rigid_self_acceleration, MoonSelfAcceleration};
pub use trajectory::{Diagnostics, Trajectory};

use nalgebra::{DMatrix, DVector};
use serde::{Deserialize, Serialize};

use crate::dynamics::{separation, Body};
use crate::error::{positive, Error, Result};
use crate::Vec3;

/// Relative link-length error tolerated after projection.
pub const LINK_TOLERANCE: f64 = 1e-6;

const PROJECTION_SWEEPS: usize = 50;

/// A fixed-distance link between two bodies.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Link {
    pub i: usize,
    pub j: usize,
    pub length: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct NBodySystem {
    bodies: Vec<Body>,
    links: Vec<Link>,
    g: f64,
}

/// Positions and velocities of every body, in system order.
#[derive(Debug, Clone, PartialEq)]
pub struct State {
    pub positions: Vec<Vec3>,
    pub velocities: Vec<Vec3>,
}

impl NBodySystem {
    pub fn new(bodies: Vec<Body>, g: f64) -> Result<Self> {
        positive("G", g)?;
        if bodies.is_empty() {
            return Err(Error::InvalidInput("system has no bodies".into()));
        }
        for i in 0..bodies.len() {
            for j in i + 1..bodies.len() {
                separation(&bodies[i].position, &bodies[j].position, (i, j))?;
            }
        }
        Ok(Self {
            bodies,
            links: Vec::new(),
            g,
        })
    }

    /// Rigidly links bodies `i` and `j` at their current separation.
    pub fn with_rigid_link(mut self, i: usize, j: usize) -> Result<Self> {
        let n = self.bodies.len();
        if i >= n || j >= n || i == j {
            return Err(Error::InvalidInput(format!(
                "link ({i}, {j}) is invalid for {n} bodies"
            )));
        }
        if self.links.iter().any(|l| (l.i, l.j) == (i, j) || (l.i, l.j) == (j, i)) {
            return Err(Error::InvalidInput(format!("link ({i}, {j}) given twice")));
        }
        let length = (self.bodies[i].position - self.bodies[j].position).norm();
        self.links.push(Link { i, j, length });
        Ok(self)
    }

    pub fn bodies(&self) -> &[Body] {
        &self.bodies
    }

    pub fn links(&self) -> &[Link] {
        &self.links
    }

    pub fn g(&self) -> f64 {
        self.g
    }

    pub fn initial_state(&self) -> State {
        State {
            positions: self.bodies.iter().map(|b| b.position).collect(),
            velocities: self.bodies.iter().map(|b| b.velocity).collect(),
        }
    }

    /// Gravitational acceleration of every body. Body `i` feels body `j`
    /// through `m_ja`; its own passive (= inertial) mass cancels.
    pub fn gravity(&self, positions: &[Vec3]) -> Result<Vec<Vec3>> {
        let n = self.bodies.len();
        let mut acc = vec![Vec3::zeros(); n];
        for i in 0..n {
            for j in i + 1..n {
                let (x, r) = separation(&positions[i], &positions[j], (i, j))?;
                let k = self.g / (r * r * r);
                acc[i] -= k * self.bodies[j].active_mass() * x;
                acc[j] += k * self.bodies[i].active_mass() * x;
            }
        }
        Ok(acc)
    }

    /// Total acceleration including rigid-link constraint forces.
    pub fn accelerations(&self, state: &State) -> Result<Vec<Vec3>> {
        let mut acc = self.gravity(&state.positions)?;
        if !self.links.is_empty() {
            self.add_constraint_forces(state, &mut acc)?;
        }
        Ok(acc)
    }

    // Solves for multipliers λ_k with force λ_k·d_k on body i and −λ_k·d_k on
    // body j so that d/dt²(|d_k|²) = 0 for every link.
    fn add_constraint_forces(&self, state: &State, acc: &mut [Vec3]) -> Result<()> {
        let k = self.links.len();
        let d: Vec<Vec3> = self
            .links
            .iter()
            .map(|l| state.positions[l.i] - state.positions[l.j])
            .collect();
        let inv_m = |b: usize| 1.0 / self.bodies[b].inertial_mass();

        // acceleration of body b per unit λ_l
        let response = |b: usize, l: usize| -> Vec3 {
            let link = &self.links[l];
            if b == link.i {
                d[l] * inv_m(b)
            } else if b == link.j {
                -d[l] * inv_m(b)
            } else {
                Vec3::zeros()
            }
        };

        let mut a = DMatrix::<f64>::zeros(k, k);
        let mut rhs = DVector::<f64>::zeros(k);
        for (row, link) in self.links.iter().enumerate() {
            for col in 0..k {
                a[(row, col)] = d[row].dot(&(response(link.i, col) - response(link.j, col)));
            }
            let w = state.velocities[link.i] - state.velocities[link.j];
            rhs[row] = -(w.norm_squared() + d[row].dot(&(acc[link.i] - acc[link.j])));
        }

        let lambda = a.lu().solve(&rhs).ok_or_else(|| {
            Error::Precondition("rigid links are redundant (singular constraint matrix)".into())
        })?;
        for (l, link) in self.links.iter().enumerate() {
            acc[link.i] += lambda[l] * d[l] * inv_m(link.i);
            acc[link.j] -= lambda[l] * d[l] * inv_m(link.j);
        }
        Ok(())
    }

    /// Moves positions back to link length about each pair's passive CM and
    /// strips the relative velocity component along each link.
    pub fn project(&self, state: &mut State) -> Result<()> {
        if self.links.is_empty() {
            return Ok(());
        }
        for _ in 0..PROJECTION_SWEEPS {
            let mut worst = 0.0_f64;
            for link in &self.links {
                let (mi, mj) = (
                    self.bodies[link.i].inertial_mass(),
                    self.bodies[link.j].inertial_mass(),
                );
                let total = mi + mj;
                let (x, r) = separation(&state.positions[link.i], &state.positions[link.j], (link.i, link.j))?;
                let n = x / r;
                let cm = (mi * state.positions[link.i] + mj * state.positions[link.j]) / total;
                state.positions[link.i] = cm + (mj / total) * link.length * n;
                state.positions[link.j] = cm - (mi / total) * link.length * n;

                let radial = (state.velocities[link.i] - state.velocities[link.j]).dot(&n);
                state.velocities[link.i] -= (mj / total) * radial * n;
                state.velocities[link.j] += (mi / total) * radial * n;
                worst = worst.max(((r - link.length) / link.length).abs());
            }
            if worst < 1e-15 {
                break;
            }
        }
        for link in &self.links {
            let r = (state.positions[link.i] - state.positions[link.j]).norm();
            let relative_error = ((r - link.length) / link.length).abs();
            if relative_error.is_nan() || relative_error > LINK_TOLERANCE {
                return Err(Error::ConstraintDivergence {
                    i: link.i,
                    j: link.j,
                    relative_error,
                });
            }
        }
        Ok(())
    }

    /// Total passive momentum, `Σ m_p·v`.
    pub fn momentum(&self, state: &State) -> Vec3 {
        self.bodies
            .iter()
            .zip(&state.velocities)
            .map(|(b, v)| b.passive_mass() * v)
            .sum()
    }

    pub fn passive_cm(&self, positions: &[Vec3]) -> Vec3 {
        weighted_mean(self.bodies.iter().map(Body::passive_mass), positions)
    }

    pub fn active_cm(&self, positions: &[Vec3]) -> Vec3 {
        weighted_mean(self.bodies.iter().map(Body::active_mass), positions)
    }

    /// Kinetic plus Newtonian potential energy from passive masses. Conserved
    /// only when every body obeys `m_a = m_p`.
    pub fn newtonian_energy(&self, state: &State) -> f64 {
        let n = self.bodies.len();
        let mut e = 0.0;
        for i in 0..n {
            e += 0.5 * self.bodies[i].passive_mass() * state.velocities[i].norm_squared();
            for j in i + 1..n {
                let r = (state.positions[i] - state.positions[j]).norm();
                e -= self.g * self.bodies[i].passive_mass() * self.bodies[j].passive_mass() / r;
            }
        }
        e
    }

    pub fn diagnostics(&self, state: &State) -> Diagnostics {
        Diagnostics {
            momentum: self.momentum(state),
            passive_cm: self.passive_cm(&state.positions),
            active_cm: self.active_cm(&state.positions),
        }
    }
}

fn weighted_mean(weights: impl Iterator<Item = f64>, positions: &[Vec3]) -> Vec3 {
    let mut total = 0.0;
    let mut sum = Vec3::zeros();
    for (w, x) in weights.zip(positions) {
        total += w;
        sum += w * x;
    }
    sum / total
}

fn offset(state: &State, dx: &[Vec3], dv: &[Vec3], h: f64) -> State {
    State {
        positions: state.positions.iter().zip(dx).map(|(x, d)| x + h * d).collect(),
        velocities: state.velocities.iter().zip(dv).map(|(v, d)| v + h * d).collect(),
    }
}

/// One classical RK4 step of size `dt`, followed by constraint projection.
pub fn step_rk4(sys: &NBodySystem, state: &State, dt: f64) -> Result<State> {
    positive("time step", dt)?;
    let k1v = sys.accelerations(state)?;
    let k1x = state.velocities.clone();

    let s2 = offset(state, &k1x, &k1v, 0.5 * dt);
    let k2v = sys.accelerations(&s2)?;
    let k2x = s2.velocities.clone();

    let s3 = offset(state, &k2x, &k2v, 0.5 * dt);
    let k3v = sys.accelerations(&s3)?;
    let k3x = s3.velocities.clone();

    let s4 = offset(state, &k3x, &k3v, dt);
    let k4v = sys.accelerations(&s4)?;
    let k4x = s4.velocities;

    let n = state.positions.len();
    let mut next = state.clone();
    for b in 0..n {
        next.positions[b] += dt / 6.0 * (k1x[b] + 2.0 * k2x[b] + 2.0 * k3x[b] + k4x[b]);
        next.velocities[b] += dt / 6.0 * (k1v[b] + 2.0 * k2v[b] + 2.0 * k3v[b] + k4v[b]);
    }
    sys.project(&mut next)?;
    Ok(next)
}

/// Integrates `n_steps` steps from the system's initial state, recording the
/// state and diagnostics after every step (plus the initial frame).
pub fn integrate(sys: &NBodySystem, dt: f64, n_steps: usize) -> Result<Trajectory> {
    positive("time step", dt)?;
    if n_steps == 0 {
        return Err(Error::InvalidInput("n_steps must be at least 1".into()));
    }
    let mut state = sys.initial_state();
    let mut traj = Trajectory::with_capacity(n_steps + 1);
    traj.push(0.0, state.clone(), sys.diagnostics(&state));
    for step in 1..=n_steps {
        state = step_rk4(sys, &state, dt).map_err(|e| Error::Step {
            step,
            source: Box::new(e),
        })?;
        traj.push(step as f64 * dt, state.clone(), sys.diagnostics(&state));
    }
    Ok(traj)
}
