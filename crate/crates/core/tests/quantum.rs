use approx::assert_relative_eq;
use eapkit::constants::{C, G, HBAR};
use eapkit::dynamics::net_force;
use eapkit::quantum::{
    accel_expansion, clock_self_acceleration, diagonal, eigh, hermitian_deviation, net_force_operator,
    sq_bound, CMatrix, Complex, InternalState, MassOperator, QuantumPair, SourceModel, SqScenario,
};
use eapkit::{Body, Error, Vec3};
use nalgebra::DVector;
use proptest::prelude::*;

const OMEGA: f64 = 4.5e15;
const M1: f64 = 2e-25;
const M2: f64 = 4e-26;
const R: f64 = 1e-9;

fn prefactor() -> f64 {
    -G / (C * C * R * R) * M2 / (M1 + M2)
}

fn clock() -> CMatrix {
    diagonal(&[0.0, HBAR * OMEGA])
}

fn run(model: &SourceModel, state: &InternalState) -> eapkit::quantum::ClockResponse {
    clock_self_acceleration(&clock(), model, state, M1, M2, R, G).unwrap()
}

#[test]
fn identity_model_has_one_silent_branch() {
    let r = run(&SourceModel::OperatorIdentity, &InternalState::equal_superposition(2));
    assert_eq!(r.branches.len(), 1);
    assert_eq!(r.branches[0].acceleration, 0.0);
    assert_relative_eq!(r.branches[0].probability, 1.0, max_relative = 1e-12);
}

#[test]
fn null_superposition_splits_into_two_branches() {
    let r = run(&SourceModel::NullSuperposition, &InternalState::equal_superposition(2));
    assert_eq!(r.branches.len(), 2);
    let hw = HBAR * OMEGA;
    let expected = G / (C * C * R * R) * M2 / (M1 + M2) * hw;
    // Δ = −Ê_p: eigenvalue −ħω first, then 0
    assert_relative_eq!(r.branches[0].acceleration, expected, max_relative = 1e-12);
    assert_eq!(r.branches[1].acceleration, 0.0);
    for b in &r.branches {
        assert_relative_eq!(b.probability, 0.5, max_relative = 1e-12);
    }
    // ⟨Ê_p⟩ = ħω/2
    assert_relative_eq!(r.s_q[0], -2.0, max_relative = 1e-12);
}

#[test]
fn null_superposition_sources_eigenstates() {
    let r = run(&SourceModel::NullSuperposition, &InternalState::basis(2, 1));
    assert!(r.branches.iter().all(|b| b.acceleration == 0.0));
}

#[test]
fn expectation_model_gives_symmetric_branches() {
    let r = run(&SourceModel::ExpectationValue { base: None }, &InternalState::equal_superposition(2));
    let hw = HBAR * OMEGA;
    assert_eq!(r.branches.len(), 2);
    assert_relative_eq!(r.branches[0].acceleration, prefactor() * -hw / 2.0, max_relative = 1e-12);
    assert_relative_eq!(r.branches[1].acceleration, prefactor() * hw / 2.0, max_relative = 1e-12);
    assert!(r.mean_acceleration().abs() < 1e-12 * r.branches[0].acceleration.abs());
}

#[test]
fn noncommuting_model_oscillates_at_transition_frequency() {
    let eps = 0.3 * HBAR * OMEGA;
    let mut active = diagonal(&[0.1 * eps, 0.7 * HBAR * OMEGA]);
    active[(0, 1)] = Complex::new(eps, 0.4 * eps);
    active[(1, 0)] = active[(0, 1)].conj();
    let psi = InternalState::normalized(DVector::from_vec(vec![Complex::new(0.6, 0.0), Complex::new(0.3, 0.7)])).unwrap();
    let r = run(&SourceModel::Noncommuting(active.clone()), &psi);
    let osc = r.oscillation.clone().expect("oscillation reported");
    assert_eq!(osc.components.len(), 1);
    assert_relative_eq!(osc.components[0].angular_frequency, OMEGA, max_relative = 1e-12);

    // direct unitary evolution under Ê_p = diag(0, ħω)
    let delta = &active - clock();
    let period = 2.0 * std::f64::consts::PI / OMEGA;
    for i in 0..16 {
        let t = period * i as f64 / 7.0;
        let phase = Complex::from_polar(1.0, -OMEGA * t);
        let evolved = DVector::from_vec(vec![psi.amplitudes()[0], psi.amplitudes()[1] * phase]);
        let expected = prefactor() * evolved.dotc(&(&delta * &evolved)).re;
        assert_relative_eq!(osc.at(t), expected, epsilon = 1e-10 * prefactor().abs() * HBAR * OMEGA);
    }
    // at t = 0 the oscillation starts from the branch-weighted mean
    assert_relative_eq!(osc.at(0.0), r.mean_acceleration(), max_relative = 1e-10);
}

#[test]
fn rejects_bad_inputs() {
    let mut skew = clock();
    skew[(0, 1)] = Complex::new(1e-19, 0.0);
    let err = clock_self_acceleration(&skew, &SourceModel::OperatorIdentity, &InternalState::basis(2, 0), M1, M2, R, G);
    assert!(matches!(err, Err(Error::NotHermitian { .. })));

    let unnormalized = DVector::from_vec(vec![Complex::new(1.0, 0.0), Complex::new(1.0, 0.0)]);
    assert!(matches!(InternalState::new(unnormalized), Err(Error::NotNormalized { .. })));

    let err = clock_self_acceleration(&clock(), &SourceModel::OperatorIdentity, &InternalState::basis(3, 0), M1, M2, R, G);
    assert!(matches!(err, Err(Error::DimensionMismatch(_))));

    let custom = SourceModel::OperatorCustom(diagonal(&[0.0, 1.0, 2.0]));
    let err = clock_self_acceleration(&clock(), &custom, &InternalState::basis(2, 0), M1, M2, R, G);
    assert!(matches!(err, Err(Error::DimensionMismatch(_))));
}

fn hermitian(n: usize) -> impl Strategy<Value = CMatrix> {
    proptest::collection::vec(-1.0..1.0f64, n * n * 2).prop_map(move |v| {
        let mut m = CMatrix::zeros(n, n);
        for i in 0..n {
            for j in 0..n {
                let z = Complex::new(v[2 * (i * n + j)], v[2 * (i * n + j) + 1]);
                m[(i, j)] += z;
                m[(j, i)] += z.conj();
            }
        }
        m.scale(1e-19)
    })
}

fn state(n: usize) -> impl Strategy<Value = InternalState> {
    proptest::collection::vec(-1.0..1.0f64, n * 2)
        .prop_filter("zero vector", |v| v.iter().any(|x| x.abs() > 1e-3))
        .prop_map(move |v| {
            let amps = DVector::from_fn(n, |i, _| Complex::new(v[2 * i], v[2 * i + 1]));
            InternalState::normalized(amps).unwrap()
        })
}

proptest! {
    #[test]
    fn exact_equivalence_is_silent(ep in hermitian(3), psi in state(3), k in 0usize..3) {
        for model in [SourceModel::OperatorIdentity, SourceModel::OperatorCustom(ep.clone())] {
            let r = clock_self_acceleration(&ep, &model, &psi, M1, M2, R, G).unwrap();
            prop_assert!(r.branches.iter().all(|b| b.acceleration == 0.0));
        }
        let diag_ep = CMatrix::from_diagonal(&ep.diagonal());
        let r = clock_self_acceleration(&diag_ep, &SourceModel::NullSuperposition, &InternalState::basis(3, k), M1, M2, R, G).unwrap();
        prop_assert!(r.branches.iter().all(|b| b.acceleration == 0.0));
    }

    #[test]
    fn branches_are_complete(ep in hermitian(2), ea in hermitian(2), psi in state(2)) {
        let r = clock_self_acceleration(&ep, &SourceModel::OperatorCustom(ea.clone()), &psi, M1, M2, R, G).unwrap();
        let total: f64 = r.branches.iter().map(|b| b.probability).sum();
        prop_assert!((total - 1.0).abs() <= 1e-12);
        // spectrum of Δ from its characteristic polynomial
        let d = &ea - &ep;
        let (a, b, c) = (d[(0, 0)].re, d[(1, 1)].re, d[(0, 1)].norm());
        let mid = 0.5 * (a + b);
        let rad = (0.25 * (a - b) * (a - b) + c * c).sqrt();
        let k = prefactor();
        let scale = (rad + mid.abs()) * k.abs();
        if r.branches.len() == 2 {
            prop_assert!((r.branches[0].acceleration - k * (mid - rad)).abs() <= 1e-12 * scale);
            prop_assert!((r.branches[1].acceleration - k * (mid + rad)).abs() <= 1e-12 * scale);
        } else {
            prop_assert!(rad <= 1e-9 * scale / k.abs());
        }
    }

    #[test]
    fn expansion_is_hermitian(e1p in hermitian(2), e1a in hermitian(2), e2p in hermitian(2), e2a in hermitian(2)) {
        let pair = QuantumPair::new(
            (MassOperator::new(M1, e1p).unwrap(), MassOperator::new(M1, e1a).unwrap()),
            (MassOperator::new(M2, e2p).unwrap(), MassOperator::new(M2 * (1.0 + 1e-8), e2a).unwrap()),
            R,
        ).unwrap();
        let f = net_force_operator(&pair, G).unwrap();
        let a = accel_expansion(&pair, G).unwrap().order_c2;
        let max = |m: &CMatrix| m.iter().map(|z| z.norm()).fold(0.0, f64::max);
        prop_assert!(hermitian_deviation(&f) <= 1e-12 * max(&f));
        prop_assert!(hermitian_deviation(&a) <= 1e-12 * max(&a));
    }

    #[test]
    fn eigenvectors_reconstruct(m in hermitian(4)) {
        let e = eigh(&m).unwrap();
        let back = e.reconstruct();
        let max = m.iter().map(|z| z.norm()).fold(0.0, f64::max);
        prop_assert!((back - &m).iter().all(|z| z.norm() <= 1e-10 * max));
    }
}

#[test]
fn scalar_operators_reduce_to_classical_dynamics() {
    // dyadic masses keep every product exact
    for (m1p, m1a, m2p, m2a) in [(1.0, 1.5, 2.0, 1.25), (0.5, 0.25, 4.0, 6.0), (3.0, 3.75, 0.125, 0.0625)] {
        let scalar = |m| MassOperator::scalar(m).unwrap();
        let pair = QuantumPair::new((scalar(m1p), scalar(m1a)), (scalar(m2p), scalar(m2a)), 2.0).unwrap();
        let b1 = Body::new(m1p, m1a, Vec3::zeros()).unwrap();
        let b2 = Body::new(m2p, m2a, Vec3::new(2.0, 0.0, 0.0)).unwrap();
        let classical = net_force(&b1, &b2, G).unwrap().x;
        let f = net_force_operator(&pair, G).unwrap()[(0, 0)];
        assert!((f.re - classical).abs() <= 1e-15 * classical.abs(), "{} vs {}", f.re, classical);
        assert_eq!(f.im, 0.0);
        let a = accel_expansion(&pair, G).unwrap();
        let expected = classical / (m1p + m2p);
        assert!((a.order_c0 - expected).abs() <= 1e-15 * expected.abs());
        assert_eq!(a.order_c2[(0, 0)].norm(), 0.0);
    }
}

#[test]
fn sq_bound_is_linear() {
    let base = SqScenario {
        clock_mass: 4e-26,
        partner_mass: 2e-25,
        separation: 1e-9,
        transition_energy: 4.8e-19,
        clock_count: 10.0,
        resolution: 1e-12,
        measured_acceleration: 0.0,
    };
    let b0 = sq_bound(&base, G).unwrap().uncertainty;
    let mut s = base.clone();
    s.resolution *= 7.0;
    assert_relative_eq!(sq_bound(&s, G).unwrap().uncertainty, 7.0 * b0, max_relative = 1e-14);
    let mut s = base.clone();
    s.clock_count *= 4.0;
    assert_relative_eq!(sq_bound(&s, G).unwrap().uncertainty, b0 / 4.0, max_relative = 1e-14);
}

#[test]
fn sq_bound_round_trip() {
    // a measured acceleration equal to the N-fold clock response recovers S_q
    let s_q = 0.37;
    let mut sc = SqScenario {
        clock_mass: 1e-14,
        partner_mass: 1e-14,
        separation: 1e-7,
        transition_energy: 1.3e-18,
        clock_count: 1e16,
        resolution: 1e-15,
        measured_acceleration: 0.0,
    };
    let per_clock = G / (C * C * sc.separation * sc.separation) * sc.partner_mass
        / (sc.clock_mass + sc.partner_mass)
        * s_q
        * sc.transition_energy;
    sc.measured_acceleration = per_clock * sc.clock_count;
    assert_relative_eq!(sq_bound(&sc, G).unwrap().central, s_q, max_relative = 1e-12);
}
