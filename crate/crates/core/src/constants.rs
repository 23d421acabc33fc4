//! Physical constants and stored reference values.

/// Newtonian constant of gravitation used unless a scenario overrides it, m³/(kg·s²).
pub const G: f64 = 6.674e-11;

/// Speed of light, m/s (exact).
pub const C: f64 = 299_792_458.0;

/// Planck constant, J·s (exact).
pub const H: f64 = 6.626_070_15e-34;

/// Reduced Planck constant, J·s.
pub const HBAR: f64 = H / (2.0 * std::f64::consts::PI);

/// Electron-volt, J (exact).
pub const EV: f64 = 1.602_176_634e-19;

/// Ångström, m.
pub const ANGSTROM: f64 = 1e-10;

pub const PROTON_MASS: f64 = 1.672_621_923_69e-27;
pub const NEUTRON_MASS: f64 = 1.674_927_498_04e-27;

/// Proton-neutron distance used for the deuteron self-acceleration estimate.
///
/// Illustrative, not a nuclear-structure input: 1 fm reproduces the quoted
/// `6e-8·S m/s²` scale.
pub const DEUTERON_SEPARATION: f64 = 1.0e-15;

/// Lunar laser ranging bound on `S(Fe, Al)`. Stored for comparison only; it
/// cannot be recomputed without the ranging data.
pub const S_LLR: f64 = 3.9e-14;

/// Kreuzer's Cavendish bound on `S(F, Br)`.
pub const S_KREUZER: f64 = 5e-5;

/// Scale of the `σ` bound implied by the scatter of laboratory `G` measurements.
pub const SIGMA_G_SCATTER: f64 = 1e-4;

/// Energy of a photon of the given vacuum wavelength, J.
pub fn photon_energy(wavelength: f64) -> f64 {
    H * C / wavelength
}
