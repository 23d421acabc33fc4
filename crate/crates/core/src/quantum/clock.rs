//! Self-acceleration of a clock system bound to a structureless partner.
//!
//! With the rest masses obeying the EAP, the leading acceleration operator is
//! `−G/(c²r²)·m₂p/(m₁p + m₂p)·(Ê₁a − Ê₁p)`. A [`SourceModel`] supplies `Ê₁a`;
//! the spectrum of `Δ = Ê₁a − Ê₁p`, weighted by the prepared state, gives the
//! branches of the acceleration.

use nalgebra::DVector;
use serde::{Deserialize, Serialize};

use super::hermitian::{eigh, require_hermitian, CMatrix, Complex};
use crate::constants::{C, HBAR};
use crate::error::{positive, Error, Result};

const NORM_TOLERANCE: f64 = 1e-12;

/// Rule assigning the active internal energy of the clock.
#[derive(Debug, Clone, PartialEq)]
pub enum SourceModel {
    /// `Ê_a = Ê_p`: exact operator EAP.
    OperatorIdentity,
    /// An explicit active energy operator.
    OperatorCustom(CMatrix),
    /// Semiclassical sourcing, `Ê_a = ⟨ψ|Ê|ψ⟩·I`, with `Ê = Ê_p` unless a base is
    /// given.
    ExpectationValue { base: Option<CMatrix> },
    /// Superpositions do not source: `Ê_a = 0` unless the state is an
    /// eigenstate of `Ê_p`, in which case `Ê_a = Ê_p`.
    NullSuperposition,
    /// An explicit active energy that need not commute with `Ê_p`; the
    /// response additionally reports the oscillation of `⟨Δ⟩(t)`.
    Noncommuting(CMatrix),
}

impl SourceModel {
    pub fn tag(&self) -> &'static str {
        match self {
            SourceModel::OperatorIdentity => "operator_identity",
            SourceModel::OperatorCustom(_) => "operator_custom",
            SourceModel::ExpectationValue { .. } => "expectation_value",
            SourceModel::NullSuperposition => "null_superposition",
            SourceModel::Noncommuting(_) => "noncommuting",
        }
    }

    /// The active internal energy for the clock prepared in `state`.
    pub fn active_energy(&self, passive: &CMatrix, state: &InternalState) -> Result<CMatrix> {
        let n = passive.nrows();
        let check = |m: &CMatrix, what: &'static str| -> Result<()> {
            require_hermitian(m, what)?;
            if m.nrows() != n {
                return Err(Error::DimensionMismatch(format!(
                    "{what} is {0}×{0}, clock is {n}×{n}",
                    m.nrows()
                )));
            }
            Ok(())
        };
        match self {
            SourceModel::OperatorIdentity => Ok(passive.clone()),
            SourceModel::OperatorCustom(m) | SourceModel::Noncommuting(m) => {
                check(m, "active energy")?;
                Ok(m.clone())
            }
            SourceModel::ExpectationValue { base } => {
                let base = match base {
                    Some(b) => {
                        check(b, "expectation base")?;
                        b
                    }
                    None => passive,
                };
                Ok(CMatrix::identity(n, n).scale(state.expectation(base)))
            }
            SourceModel::NullSuperposition => {
                if state.is_eigenstate_of(passive) {
                    Ok(passive.clone())
                } else {
                    Ok(CMatrix::zeros(n, n))
                }
            }
        }
    }
}

/// A normalized internal state.
#[derive(Debug, Clone, PartialEq)]
pub struct InternalState {
    amplitudes: DVector<Complex<f64>>,
}

impl InternalState {
    pub fn new(amplitudes: DVector<Complex<f64>>) -> Result<Self> {
        let norm = amplitudes.norm();
        if amplitudes.is_empty() || norm.is_nan() || (norm - 1.0).abs() > NORM_TOLERANCE {
            return Err(Error::NotNormalized { norm });
        }
        Ok(Self { amplitudes })
    }

    /// Normalizes the given amplitudes.
    pub fn normalized(amplitudes: DVector<Complex<f64>>) -> Result<Self> {
        let norm = amplitudes.norm();
        if !(norm > 0.0 && norm.is_finite()) {
            return Err(Error::NotNormalized { norm });
        }
        Self::new(amplitudes.unscale(norm))
    }

    pub fn basis(dim: usize, k: usize) -> Self {
        let mut v = DVector::from_element(dim, Complex::new(0.0, 0.0));
        v[k] = Complex::new(1.0, 0.0);
        Self { amplitudes: v }
    }

    /// `(|0⟩ + |1⟩ + …)/√n`.
    pub fn equal_superposition(dim: usize) -> Self {
        let a = Complex::new(1.0 / (dim as f64).sqrt(), 0.0);
        Self {
            amplitudes: DVector::from_element(dim, a),
        }
    }

    pub fn dim(&self) -> usize {
        self.amplitudes.len()
    }

    pub fn amplitudes(&self) -> &DVector<Complex<f64>> {
        &self.amplitudes
    }

    /// `⟨ψ|A|ψ⟩` (real part; exact for Hermitian `A`).
    pub fn expectation(&self, op: &CMatrix) -> f64 {
        self.amplitudes.dotc(&(op * &self.amplitudes)).re
    }

    pub fn is_eigenstate_of(&self, op: &CMatrix) -> bool {
        let applied = op * &self.amplitudes;
        let mean = self.expectation(op);
        let residual = (&applied - self.amplitudes.scale(mean)).norm();
        let scale = op.iter().map(|z| z.norm()).fold(0.0, f64::max);
        residual <= 1e-10 * scale.max(f64::MIN_POSITIVE)
    }
}

/// One acceleration branch: probability of finding the clock in the
/// corresponding eigenspace of `Δ`, and the acceleration there (m/s²).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Branch {
    pub probability: f64,
    pub acceleration: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct OscillationComponent {
    /// rad/s.
    pub angular_frequency: f64,
    /// m/s².
    pub amplitude: f64,
    /// rad, as in `amplitude·cos(ω t + phase)`.
    pub phase: f64,
}

/// `⟨a⟩(t)` under free evolution generated by `Ê_p`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Oscillation {
    pub mean: f64,
    pub components: Vec<OscillationComponent>,
}

impl Oscillation {
    pub fn at(&self, t: f64) -> f64 {
        self.mean
            + self
                .components
                .iter()
                .map(|c| c.amplitude * (c.angular_frequency * t + c.phase).cos())
                .sum::<f64>()
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ClockResponse {
    pub model: String,
    pub branches: Vec<Branch>,
    /// `λ/⟨Ê_p⟩` for each branch; empty when `⟨Ê_p⟩ = 0`.
    pub s_q: Vec<f64>,
    pub oscillation: Option<Oscillation>,
}

impl ClockResponse {
    pub fn mean_acceleration(&self) -> f64 {
        self.branches.iter().map(|b| b.probability * b.acceleration).sum()
    }
}

/// `−G/(c²r²)·m₂p/(m₁p + m₂p)`, the factor turning energy into acceleration.
pub fn clock_prefactor(m1p: f64, m2p: f64, r: f64, g: f64) -> f64 {
    -g / (C * C * r * r) * m2p / (m1p + m2p)
}

pub fn clock_self_acceleration(
    clock_energy: &CMatrix,
    model: &SourceModel,
    state: &InternalState,
    m1p: f64,
    m2p: f64,
    r: f64,
    g: f64,
) -> Result<ClockResponse> {
    require_hermitian(clock_energy, "clock energy")?;
    positive("clock mass", m1p)?;
    positive("partner mass", m2p)?;
    positive("separation", r)?;
    let n = clock_energy.nrows();
    if state.dim() != n {
        return Err(Error::DimensionMismatch(format!(
            "state has {} amplitudes, clock has {n} levels",
            state.dim()
        )));
    }

    let active = model.active_energy(clock_energy, state)?;
    let delta = &active - clock_energy;
    let k = clock_prefactor(m1p, m2p, r, g);
    let spectrum = eigh(&delta)?;

    let scale = delta
        .iter()
        .chain(clock_energy.iter())
        .map(|z| z.norm())
        .fold(0.0, f64::max);
    let tol = 1e-10 * scale;

    let psi = state.amplitudes();
    let mut groups: Vec<(f64, f64)> = Vec::new();
    for (idx, &lambda) in spectrum.values.iter().enumerate() {
        let p = spectrum.vectors.column(idx).dotc(psi).norm_sqr();
        match groups.last_mut() {
            Some((l, prob)) if (lambda - *l).abs() <= tol => *prob += p,
            _ => groups.push((lambda, p)),
        }
    }

    let mean_energy = state.expectation(clock_energy);
    let s_q = if mean_energy != 0.0 {
        groups.iter().map(|(l, _)| l / mean_energy).collect()
    } else {
        Vec::new()
    };
    let branches = groups
        .iter()
        .map(|&(lambda, probability)| Branch {
            probability,
            acceleration: k * lambda,
        })
        .collect();

    let oscillation = match model {
        SourceModel::Noncommuting(_) => Some(oscillation(clock_energy, &delta, state, k, tol)?),
        _ => None,
    };

    Ok(ClockResponse {
        model: model.tag().into(),
        branches,
        s_q,
        oscillation,
    })
}

// In the Ê_p eigenbasis ψ(t) = Σ c_j e^{−iE_j t/ħ}|e_j⟩, so
// ⟨Δ⟩(t) = Σ|c_j|²Δ_jj + Σ_{j<k} 2 Re(c̄_j c_k Δ_jk e^{i(E_j − E_k)t/ħ}).
fn oscillation(
    energy: &CMatrix,
    delta: &CMatrix,
    state: &InternalState,
    k: f64,
    tol: f64,
) -> Result<Oscillation> {
    let basis = eigh(energy)?;
    let u = &basis.vectors;
    let c = u.adjoint() * state.amplitudes();
    let d = u.adjoint() * delta * u;
    let n = c.len();

    let mean = (0..n).map(|j| c[j].norm_sqr() * d[(j, j)].re).sum::<f64>();
    // phasors keyed by ω, each contributing 2 Re(w e^{iωt})
    let mut phasors: Vec<(f64, Complex<f64>)> = Vec::new();
    for j in 0..n {
        for l in j + 1..n {
            let gap = basis.values[j] - basis.values[l];
            let z = c[j].conj() * c[l] * d[(j, l)];
            if gap.abs() <= tol {
                // degenerate levels: a static contribution
                phasors.push((0.0, z));
                continue;
            }
            let omega = gap.abs() / HBAR;
            let w = if gap > 0.0 { z } else { z.conj() };
            match phasors.iter_mut().find(|(o, _)| (o - omega).abs() <= 1e-9 * omega) {
                Some((_, acc)) => *acc += w,
                None => phasors.push((omega, w)),
            }
        }
    }
    let mut static_part = 0.0;
    let mut components = Vec::new();
    for (omega, w) in phasors {
        if omega == 0.0 {
            static_part += 2.0 * w.re;
        } else {
            components.push(OscillationComponent {
                angular_frequency: omega,
                amplitude: 2.0 * w.norm() * k.abs(),
                phase: w.arg() + if k < 0.0 { std::f64::consts::PI } else { 0.0 },
            });
        }
    }
    components.sort_by(|a, b| a.angular_frequency.total_cmp(&b.angular_frequency));
    Ok(Oscillation {
        mean: k * (mean + static_part),
        components,
    })
}
