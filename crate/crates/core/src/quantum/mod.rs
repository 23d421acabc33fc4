//! Mass-energy operators and quantum violations of the active/passive
//! equivalence.
//!
//! A composite system with addressable internal levels has mass operator
//! `M̂ = m·I + Ê/c²`. Active and passive variants may differ even when the
//! rest masses agree. For two systems at fixed separation the joint internal
//! space is the tensor product, with system 1's operators acting as `Ê ⊗ I`
//! and system 2's as `I ⊗ Ê`.
//!
//! Scalar forces and accelerations in this module are components along the
//! unit vector pointing from system 1 to system 2.

mod bounds;
mod clock;
mod hermitian;
mod mass;
mod overlap;
mod pair;

pub use bounds::{sq_bound, SqScenario};
pub use clock::{
    clock_self_acceleration, Branch, ClockResponse, InternalState, Oscillation,
    OscillationComponent, SourceModel,
};
pub use hermitian::{diagonal, eigh, hermitian_deviation, CMatrix, Complex, Eigh};
pub use mass::{MassOperator, WEAK_FIELD_LIMIT};
pub use overlap::{alpha_eff, binding_distance, binding_energy, overlap};
pub use pair::{accel_expansion, net_force_operator, AccelExpansion, QuantumPair};
