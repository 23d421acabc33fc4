use super::hermitian::CMatrix;
use super::mass::{MassOperator, WEAK_FIELD_LIMIT};
use crate::constants::C;
use crate::dynamics::reduced_mass;
use crate::error::{positive, Error, Result};

/// Two systems at fixed separation, each with passive and active mass operators.
#[derive(Debug, Clone, PartialEq)]
pub struct QuantumPair {
    pub system1_passive: MassOperator,
    pub system1_active: MassOperator,
    pub system2_passive: MassOperator,
    pub system2_active: MassOperator,
    pub separation: f64,
}

impl QuantumPair {
    pub fn new(
        system1: (MassOperator, MassOperator),
        system2: (MassOperator, MassOperator),
        separation: f64,
    ) -> Result<Self> {
        positive("separation", separation)?;
        for (which, (p, a)) in [("system 1", &system1), ("system 2", &system2)] {
            if p.dim() != a.dim() {
                return Err(Error::DimensionMismatch(format!(
                    "{which}: passive operator is {0}×{0} but active is {1}×{1}",
                    p.dim(),
                    a.dim()
                )));
            }
        }
        Ok(Self {
            system1_passive: system1.0,
            system1_active: system1.1,
            system2_passive: system2.0,
            system2_active: system2.1,
            separation,
        })
    }

    /// Both systems obey `M̂_a = M̂_p`.
    pub fn equivalent(system1: MassOperator, system2: MassOperator, separation: f64) -> Result<Self> {
        Self::new((system1.clone(), system1), (system2.clone(), system2), separation)
    }

    pub fn joint_dim(&self) -> usize {
        self.system1_passive.dim() * self.system2_passive.dim()
    }

    /// Relabels system 1 as system 2 and vice versa.
    pub fn swapped(&self) -> Self {
        Self {
            system1_passive: self.system2_passive.clone(),
            system1_active: self.system2_active.clone(),
            system2_passive: self.system1_passive.clone(),
            system2_active: self.system1_active.clone(),
            separation: self.separation,
        }
    }

    fn embed1(&self, op: &CMatrix) -> CMatrix {
        let n2 = self.system2_passive.dim();
        op.kronecker(&CMatrix::identity(n2, n2))
    }

    fn embed2(&self, op: &CMatrix) -> CMatrix {
        let n1 = self.system1_passive.dim();
        CMatrix::identity(n1, n1).kronecker(op)
    }

    fn operators(&self) -> [&MassOperator; 4] {
        [
            &self.system1_passive,
            &self.system1_active,
            &self.system2_passive,
            &self.system2_active,
        ]
    }
}

/// `F̂_net = −(G/r²)·(M̂₁a ⊗ M̂₂p − M̂₁p ⊗ M̂₂a)` on the joint internal space.
pub fn net_force_operator(pair: &QuantumPair, g: f64) -> Result<CMatrix> {
    let r2 = pair.separation * pair.separation;
    let m1a_m2p = pair.system1_active.operator().kronecker(&pair.system2_passive.operator());
    let m1p_m2a = pair.system1_passive.operator().kronecker(&pair.system2_active.operator());
    Ok((m1a_m2p - m1p_m2a).scale(-g / r2))
}

/// Center-of-mass acceleration grouped by powers of `1/c`.
#[derive(Debug, Clone, PartialEq)]
pub struct AccelExpansion {
    /// Rest-mass term, `−S·G·μ/r²`; zero when the rest masses obey the EAP.
    pub order_c0: f64,
    /// Leading internal-energy correction, a Hermitian operator.
    pub order_c2: CMatrix,
}

impl AccelExpansion {
    pub fn total(&self) -> CMatrix {
        let n = self.order_c2.nrows();
        CMatrix::identity(n, n).scale(self.order_c0) + &self.order_c2
    }
}

pub fn accel_expansion(pair: &QuantumPair, g: f64) -> Result<AccelExpansion> {
    for op in pair.operators() {
        let ratio = op.weak_field_ratio()?;
        if ratio > WEAK_FIELD_LIMIT {
            return Err(Error::WeakField {
                ratio,
                limit: WEAK_FIELD_LIMIT,
            });
        }
    }
    let m1p = pair.system1_passive.rest_mass();
    let m1a = pair.system1_active.rest_mass();
    let m2p = pair.system2_passive.rest_mass();
    let m2a = pair.system2_active.rest_mass();
    let total = m1p + m2p;
    let mu = reduced_mass(m1p, m2p);
    let s = m1a / m1p - m2a / m2p;
    let k = -g / (pair.separation * pair.separation);
    let c2 = C * C;

    let e1p = pair.embed1(pair.system1_passive.internal_energy());
    let e1a = pair.embed1(pair.system1_active.internal_energy());
    let e2p = pair.embed2(pair.system2_passive.internal_energy());
    let e2a = pair.embed2(pair.system2_active.internal_energy());

    let active_fraction = (m1a + m2a) / total;
    let bracket = (e2p.scale(1.0 / (m2p * c2)) - e1p.scale(1.0 / (m1p * c2))).scale(active_fraction)
        + e1a.scale(1.0 / (m1p * c2))
        - e2a.scale(1.0 / (m2p * c2));

    Ok(AccelExpansion {
        order_c0: k * s * mu,
        order_c2: bracket.scale(k * mu),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constants::G;
    use crate::dynamics::{net_force, Body};
    use crate::quantum::{diagonal, hermitian_deviation, Complex};
    use crate::Vec3;
    use approx::assert_relative_eq;

    const HW: f64 = 4.8e-19;

    fn clock(m: f64, levels: &[f64]) -> MassOperator {
        MassOperator::new(m, diagonal(levels)).unwrap()
    }

    fn max_abs(m: &CMatrix) -> f64 {
        m.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    #[test]
    fn exact_equivalence_vanishes() {
        let pair = QuantumPair::equivalent(clock(2e-25, &[0.0, HW]), clock(4e-26, &[0.0, 0.3 * HW]), 1e-9).unwrap();
        let e = accel_expansion(&pair, G).unwrap();
        assert_eq!(e.order_c0, 0.0);
        assert!(max_abs(&e.order_c2) < 1e-30 * max_abs(&net_force_operator(&pair, G).unwrap()).max(1.0));
        assert_eq!(max_abs(&net_force_operator(&pair, G).unwrap()), 0.0);
    }

    #[test]
    fn scalar_pair_matches_classical_force() {
        let (m1p, m1a, m2p, m2a) = (1.0, 1.5, 2.0, 1.25);
        let r = 2.0;
        let pair = QuantumPair::new(
            (MassOperator::scalar(m1p).unwrap(), MassOperator::scalar(m1a).unwrap()),
            (MassOperator::scalar(m2p).unwrap(), MassOperator::scalar(m2a).unwrap()),
            r,
        )
        .unwrap();
        let b1 = Body::new(m1p, m1a, Vec3::zeros()).unwrap();
        let b2 = Body::new(m2p, m2a, Vec3::new(r, 0.0, 0.0)).unwrap();
        let classical = net_force(&b1, &b2, G).unwrap().x;
        let f = net_force_operator(&pair, G).unwrap();
        assert_relative_eq!(f[(0, 0)].re, classical, max_relative = 1e-15);
        let a = accel_expansion(&pair, G).unwrap();
        assert_relative_eq!(a.order_c0, classical / (m1p + m2p), max_relative = 1e-15);
    }

    #[test]
    fn clock_with_inert_partner() {
        let (m1, m2, r) = (2e-25, 4e-26, 1e-9);
        let passive = clock(m1, &[0.0, HW]);
        let active = clock(m1, &[0.0, 0.0]);
        let pair = QuantumPair::new((passive, active), (MassOperator::scalar(m2).unwrap(), MassOperator::scalar(m2).unwrap()), r).unwrap();
        let e = accel_expansion(&pair, G).unwrap();
        assert_eq!(e.order_c0, 0.0);
        let k = -G / (C * C * r * r) * m2 / (m1 + m2);
        assert!(e.order_c2[(0, 0)].norm() < 1e-300);
        assert_relative_eq!(e.order_c2[(1, 1)].re, k * (0.0 - HW), max_relative = 1e-12);
    }

    #[test]
    fn swapping_labels_flips_sign() {
        let s1 = (clock(2e-25, &[0.0, HW]), clock(2e-25, &[0.0, 0.4 * HW]));
        let s2 = (clock(4e-26, &[0.0, 0.2 * HW, 0.5 * HW]), clock(4e-26, &[0.1 * HW, 0.2 * HW, 0.0]));
        let pair = QuantumPair::new(s1, s2, 1e-9).unwrap();
        let a = accel_expansion(&pair, G).unwrap().order_c2;
        let b = accel_expansion(&pair.swapped(), G).unwrap().order_c2;
        let (n1, n2) = (2, 3);
        // |i⟩⊗|j⟩ ↦ |j⟩⊗|i⟩
        let mut p = CMatrix::zeros(n1 * n2, n1 * n2);
        for i in 0..n1 {
            for j in 0..n2 {
                p[(j * n1 + i, i * n2 + j)] = Complex::new(1.0, 0.0);
            }
        }
        let back = p.adjoint() * &b * &p;
        assert!(max_abs(&(back + &a)) <= 1e-12 * max_abs(&a));
    }

    #[test]
    fn outputs_are_hermitian() {
        let mut e = diagonal(&[0.0, HW]);
        e[(0, 1)] = Complex::new(0.1 * HW, 0.2 * HW);
        e[(1, 0)] = e[(0, 1)].conj();
        let s1 = (clock(2e-25, &[0.0, HW]), MassOperator::new(2e-25, e).unwrap());
        let s2 = (clock(4e-26, &[0.0, 0.5 * HW]), clock(4e-26 * (1.0 + 1e-9), &[0.0, 0.5 * HW]));
        let pair = QuantumPair::new(s1, s2, 1e-9).unwrap();
        let f = net_force_operator(&pair, G).unwrap();
        let a = accel_expansion(&pair, G).unwrap().order_c2;
        assert!(hermitian_deviation(&f) <= 1e-12 * max_abs(&f));
        assert!(hermitian_deviation(&a) <= 1e-12 * max_abs(&a));
    }

    #[test]
    fn expansion_tracks_exact_diagonal_value() {
        // commuting diagonal operators: each product state is a classical pair
        let (m1, m2, r) = (2e-25, 4e-26, 1e-9);
        let e1p = [0.0, HW];
        let e1a = [0.0, 0.7 * HW];
        let s1 = (clock(m1, &e1p), clock(m1, &e1a));
        let s2 = (MassOperator::scalar(m2).unwrap(), MassOperator::scalar(m2).unwrap());
        let pair = QuantumPair::new(s1, s2, r).unwrap();
        let total = accel_expansion(&pair, G).unwrap().total();
        let c2 = C * C;
        for k in 0..2 {
            let p1 = m1 + e1p[k] / c2;
            let exact = -G / (r * r) * m2 * ((e1a[k] - e1p[k]) / c2) / (p1 + m2);
            assert_relative_eq!(total[(k, k)].re, exact, epsilon = 1e-9 * exact.abs().max(1e-40));
        }
    }

    #[test]
    fn strong_internal_energy_is_refused() {
        let hot = clock(1e-30, &[0.0, 1e-16]);
        let pair = QuantumPair::equivalent(hot, MassOperator::scalar(1.0).unwrap(), 1.0).unwrap();
        assert!(matches!(accel_expansion(&pair, G), Err(Error::WeakField { .. })));
    }

    #[test]
    fn mismatched_dimensions_are_rejected() {
        let r = QuantumPair::new((clock(1.0, &[0.0, 1.0]), clock(1.0, &[0.0])), (MassOperator::scalar(1.0).unwrap(), MassOperator::scalar(1.0).unwrap()), 1.0);
        assert!(matches!(r, Err(Error::DimensionMismatch(_))));
    }
}
