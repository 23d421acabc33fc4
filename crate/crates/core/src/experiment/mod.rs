//! Observables and bound inversion for desk-scale EAP experiments.
//!
//! Uncertainties are treated as independent Gaussian errors and propagated to
//! first order in quadrature. Torsion-pendulum dynamics are not modeled: the
//! angular acceleration `φ̈` is taken as the directly measured quantity.

mod bound;
mod cavendish;
mod materials;
mod measured;
mod slab;

pub use bound::{BoundResult, Parameter};
pub use cavendish::{
    cavendish_torque, invert_s_null, invert_sigma_standard, null_angular_acceleration,
    null_cavendish_torque, standard_angular_acceleration, CavendishNullConfig,
    CavendishStandardConfig,
};
pub use materials::{material_lookup, Material, MATERIALS};
pub use measured::Measured;
pub use slab::{invert_s_slab, slab_self_acceleration, SlabConfig};

pub(crate) use measured::Monomial;
