use super::hermitian::{eigh, require_hermitian, CMatrix};
use crate::constants::C;
use crate::error::{positive, Result};

/// Internal energy / rest energy above which the `1/c²` expansion is refused.
pub const WEAK_FIELD_LIMIT: f64 = 1e-6;

/// `M̂ = m·I + Ê/c²` on an `n`-dimensional internal space.
#[derive(Debug, Clone, PartialEq)]
pub struct MassOperator {
    rest_mass: f64,
    internal_energy: CMatrix,
}

impl MassOperator {
    pub fn new(rest_mass: f64, internal_energy: CMatrix) -> Result<Self> {
        positive("rest mass", rest_mass)?;
        require_hermitian(&internal_energy, "internal energy")?;
        let op = Self {
            rest_mass,
            internal_energy,
        };
        let ratio = op.weak_field_ratio()?;
        if ratio > WEAK_FIELD_LIMIT {
            log::warn!(
                "internal energy is {ratio:e} of the rest energy; weak-field expansion not valid"
            );
        }
        Ok(op)
    }

    /// A structureless mass (1×1, zero internal energy).
    pub fn scalar(rest_mass: f64) -> Result<Self> {
        Self::new(rest_mass, CMatrix::zeros(1, 1))
    }

    pub fn rest_mass(&self) -> f64 {
        self.rest_mass
    }

    pub fn internal_energy(&self) -> &CMatrix {
        &self.internal_energy
    }

    pub fn dim(&self) -> usize {
        self.internal_energy.nrows()
    }

    /// Largest `|eigenvalue of Ê|` over the rest energy `m·c²`.
    pub fn weak_field_ratio(&self) -> Result<f64> {
        let e = eigh(&self.internal_energy)?;
        let spectral_radius = e.values.iter().map(|v| v.abs()).fold(0.0, f64::max);
        Ok(spectral_radius / (self.rest_mass * C * C))
    }

    pub fn operator(&self) -> CMatrix {
        let n = self.dim();
        CMatrix::identity(n, n).scale(self.rest_mass) + self.internal_energy.map(|z| z / (C * C))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quantum::{diagonal, Complex};

    #[test]
    fn scalar_operator() {
        let m = MassOperator::scalar(2.0).unwrap();
        assert_eq!(m.dim(), 1);
        assert_eq!(m.operator()[(0, 0)].re, 2.0);
        assert_eq!(m.weak_field_ratio().unwrap(), 0.0);
    }

    #[test]
    fn operator_adds_energy_over_c_squared() {
        let e = 4.8e-19;
        let m = MassOperator::new(2e-25, diagonal(&[0.0, e])).unwrap();
        let op = m.operator();
        assert_eq!(op[(0, 0)].re, 2e-25);
        assert!((op[(1, 1)].re - (2e-25 + e / (C * C))).abs() < 1e-40);
        assert!(m.weak_field_ratio().unwrap() < 1e-9);
    }

    #[test]
    fn rejects_bad_inputs() {
        assert!(MassOperator::scalar(0.0).is_err());
        let mut e = diagonal(&[0.0, 1.0]);
        e[(0, 1)] = Complex::new(0.5, 0.0);
        assert!(MassOperator::new(1.0, e).is_err());
    }
}
