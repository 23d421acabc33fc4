//! Two-body force laws when active and passive gravitational mass differ.
//!
//! Inertial mass is identified with passive mass throughout. Forces are always
//! stored as the force acting *on* the named body and are attractive.
//!
//! The passive Newtonian force used to express the anomalies is
//! `F_N = G·m1p·m2p·(x1 − x2)/|x1 − x2|³`, i.e. the ordinary force that body 1
//! exerts on body 2. With that choice the net force on the pair is exactly
//! `S·F_N` and the relative coordinate `x = x1 − x2` obeys `μ·ẍ = (σ − 1)·F_N`.

use serde::{Deserialize, Serialize};

use crate::error::{positive, Error, Result};
use crate::Vec3;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Body {
    passive_mass: f64,
    active_mass: f64,
    pub position: Vec3,
    pub velocity: Vec3,
    pub material: String,
}

impl Body {
    pub fn new(passive_mass: f64, active_mass: f64, position: Vec3) -> Result<Self> {
        Ok(Self {
            passive_mass: positive("passive mass", passive_mass)?,
            active_mass: positive("active mass", active_mass)?,
            position,
            velocity: Vec3::zeros(),
            material: String::new(),
        })
    }

    /// A body obeying `m_a = m_p`.
    pub fn ordinary(mass: f64, position: Vec3) -> Result<Self> {
        Self::new(mass, mass, position)
    }

    pub fn with_velocity(mut self, velocity: Vec3) -> Self {
        self.velocity = velocity;
        self
    }

    pub fn with_material(mut self, material: impl Into<String>) -> Self {
        self.material = material.into();
        self
    }

    pub fn passive_mass(&self) -> f64 {
        self.passive_mass
    }

    pub fn active_mass(&self) -> f64 {
        self.active_mass
    }

    /// Inertial mass; equal to the passive mass by assumption.
    pub fn inertial_mass(&self) -> f64 {
        self.passive_mass
    }

    /// `m_a / m_p`.
    pub fn mass_ratio(&self) -> f64 {
        self.active_mass / self.passive_mass
    }
}

/// The pair `(S, σ)` characterizing an EAP violation between two bodies.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ViolationParams {
    pub s: f64,
    pub sigma: f64,
}

impl ViolationParams {
    pub const NONE: ViolationParams = ViolationParams { s: 0.0, sigma: 0.0 };

    /// Computes both parameters from the four masses.
    pub fn from_masses(m1p: f64, m1a: f64, m2p: f64, m2a: f64) -> Self {
        Self {
            s: m1a / m1p - m2a / m2p,
            sigma: 1.0 - (m1a + m2a) / (m1p + m2p),
        }
    }

    /// Active masses `(m1a, m2a)` reproducing this `(S, σ)` for the given passive masses.
    pub fn active_masses(&self, m1p: f64, m2p: f64) -> (f64, f64) {
        let total = m1p + m2p;
        let r1 = (1.0 - self.sigma) + self.s * m2p / total;
        let r2 = (1.0 - self.sigma) - self.s * m1p / total;
        (r1 * m1p, r2 * m2p)
    }
}

pub fn violation_params(b1: &Body, b2: &Body) -> ViolationParams {
    ViolationParams::from_masses(
        b1.passive_mass,
        b1.active_mass,
        b2.passive_mass,
        b2.active_mass,
    )
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ForcePair {
    pub on_body1: Vec3,
    pub on_body2: Vec3,
}

impl ForcePair {
    pub fn sum(&self) -> Vec3 {
        self.on_body1 + self.on_body2
    }
}

/// Returns `x1 − x2` and its length, rejecting coincident bodies.
pub(crate) fn separation(x1: &Vec3, x2: &Vec3, pair: (usize, usize)) -> Result<(Vec3, f64)> {
    let x = x1 - x2;
    let r = x.norm();
    if r > 0.0 && r.is_finite() {
        Ok((x, r))
    } else {
        Err(Error::Singular(pair.0, pair.1))
    }
}

/// Attractive forces on each body: body 2 sources the force on body 1 with its
/// active mass, and vice versa.
pub fn pairwise_forces(b1: &Body, b2: &Body, g: f64) -> Result<ForcePair> {
    let (x, r) = separation(&b1.position, &b2.position, (0, 1))?;
    let k = g / (r * r * r);
    Ok(ForcePair {
        on_body1: -k * b1.passive_mass * b2.active_mass * x,
        on_body2: k * b1.active_mass * b2.passive_mass * x,
    })
}

/// Material-dependent coupling `G·m_a/m_p`.
pub fn effective_g(b: &Body, g: f64) -> f64 {
    g * b.mass_ratio()
}

/// `F_N`: the ordinary force of body 1 on body 2 built from passive masses.
pub fn newtonian_force(b1: &Body, b2: &Body, g: f64) -> Result<Vec3> {
    let (x, r) = separation(&b1.position, &b2.position, (0, 1))?;
    Ok(g * b1.passive_mass * b2.passive_mass / (r * r * r) * x)
}

/// Net force on the pair, `S·F_N`.
pub fn net_force(b1: &Body, b2: &Body, g: f64) -> Result<Vec3> {
    let s = violation_params(b1, b2).s;
    Ok(s * newtonian_force(b1, b2, g)?)
}

/// Acceleration of the passive center of mass.
pub fn cm_acceleration(b1: &Body, b2: &Body, g: f64) -> Result<Vec3> {
    Ok(net_force(b1, b2, g)? / (b1.passive_mass + b2.passive_mass))
}

/// Acceleration of `x = x1 − x2`, `(σ − 1)·F_N/μ`.
pub fn relative_acceleration(b1: &Body, b2: &Body, g: f64) -> Result<Vec3> {
    let sigma = violation_params(b1, b2).sigma;
    let mu = reduced_mass(b1.passive_mass, b2.passive_mass);
    Ok((sigma - 1.0) * newtonian_force(b1, b2, g)? / mu)
}

pub fn reduced_mass(m1: f64, m2: f64) -> f64 {
    m1 * m2 / (m1 + m2)
}
