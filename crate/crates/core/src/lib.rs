//! Newtonian dynamics with unequal active and passive gravitational mass.
//!
//! The crate is split along the lines of the physics:
//!
//! * [`dynamics`] holds the closed-form force laws and the two violation
//!   parameters `S` and `σ`. Every other module derives its forces from here.
//! * [`simulation`] integrates N-body systems (optionally with rigid links)
//!   under those forces and checks the active center-of-mass theorem.
//! * [`experiment`] inverts torsion-balance and thin-film observables into
//!   bounds on `S` and `σ`, with first-order uncertainty propagation.
//! * [`quantum`] lifts the masses to operators `m·I + Ê/c²` and computes the
//!   self-acceleration of a clock bound to a partner, plus `S_q` bounds.
//!
//! All quantities are SI.

pub mod constants;
pub mod dynamics;
pub mod error;
pub mod experiment;
pub mod quantum;
pub mod simulation;

pub use dynamics::{Body, ForcePair, ViolationParams};
pub use error::{Error, Result};

pub type Vec3 = nalgebra::Vector3<f64>;
