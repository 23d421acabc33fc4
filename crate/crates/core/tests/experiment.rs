mod common;

use approx::assert_relative_eq;
use eapkit::constants::G;
use eapkit::experiment::{
    invert_s_null, invert_s_slab, invert_sigma_standard, material_lookup, null_cavendish_torque,
    slab_self_acceleration, standard_angular_acceleration, CavendishNullConfig, CavendishStandardConfig,
    Measured, SlabConfig,
};
use eapkit::simulation::{integrate, rigid_self_acceleration, NBodySystem};
use eapkit::{Body, Error, Vec3, ViolationParams};
use proptest::prelude::*;

fn m(v: f64, s: f64) -> Measured {
    Measured::new(v, s).unwrap()
}

fn null_cfg(sigmas: [f64; 4]) -> CavendishNullConfig {
    CavendishNullConfig {
        test_mass: 0.01,
        arm: m(0.1, sigmas[0]),
        source_distance: m(0.1, sigmas[1]),
        source_mass: m(10.0, sigmas[2]),
        angular_acceleration: m(0.0, sigmas[3]),
        materials: ["tungsten".into(), "aluminum".into()],
    }
}

fn slab(rho1: f64, rho2: f64, a: f64, b: f64, c: f64) -> SlabConfig {
    SlabConfig {
        rho1,
        rho2,
        thickness: a,
        length: b,
        width: c,
        resolution: 1e-15,
        measured_acceleration: 0.0,
        materials: Default::default(),
    }
}

proptest! {
    #[test]
    fn null_round_trip(s in -1e-3..1e-3f64) {
        let mut cfg = null_cfg([0.0; 4]);
        let phi = null_cavendish_torque(&cfg, ViolationParams { s, sigma: 0.0 }, G).unwrap()
            / (cfg.test_mass * cfg.arm.value * cfg.arm.value);
        cfg.angular_acceleration = Measured::exact(phi);
        let b = invert_s_null(&cfg, G).unwrap();
        prop_assert!((b.central - s).abs() <= 1e-12 * s.abs());
    }

    #[test]
    fn sigma_round_trip(sigma in -1e-2..1e-2f64) {
        let mut cfg = CavendishStandardConfig {
            test_mass: 0.01,
            arm: m(0.1, 0.0),
            source_offset: m(0.05, 0.0),
            source_masses: [m(5.0, 0.0), m(7.0, 0.0)],
            angular_acceleration: m(0.0, 0.0),
            materials: Default::default(),
        };
        cfg.angular_acceleration = Measured::exact(standard_angular_acceleration(&cfg, sigma, G).unwrap());
        let b = invert_sigma_standard(&cfg, Measured::exact(G)).unwrap();
        prop_assert!((b.central - sigma).abs() <= 1e-12 * sigma.abs().max(1e-3));
    }

    #[test]
    fn slab_round_trip(s in -1e-10..1e-10f64, log_a in -9.0..-5.0f64) {
        let mut cfg = slab(1.93e4, 2.145e4, 10f64.powf(log_a), 1.0, 1.0);
        cfg.measured_acceleration = slab_self_acceleration(&cfg, s, G).unwrap();
        let b = invert_s_slab(&cfg, G).unwrap();
        prop_assert!((b.central - s).abs() <= 1e-12 * s.abs());
    }

    #[test]
    fn uncertainty_is_monotone(base in proptest::array::uniform4(1e-6..1e-4f64), which in 0usize..4, factor in 1.0..10.0f64) {
        let mut cfg = null_cfg(base);
        cfg.angular_acceleration.sigma_abs = 1e-10;
        let before = invert_s_null(&cfg, G).unwrap();
        let mut bumped = base;
        bumped[which] *= factor;
        let mut cfg2 = null_cfg(bumped);
        cfg2.angular_acceleration.sigma_abs = if which == 3 { 1e-10 * factor } else { 1e-10 };
        let after = invert_s_null(&cfg2, G).unwrap();
        prop_assert!(after.uncertainty >= before.uncertainty);
        prop_assert!(after.second_order_uncertainty >= before.second_order_uncertainty);
    }

    #[test]
    fn null_design_blind_to_sigma(s in -1e-3..1e-3f64, s1 in -0.1..0.1f64, s2 in -0.1..0.1f64) {
        let cfg = null_cfg([0.0; 4]);
        let a = null_cavendish_torque(&cfg, ViolationParams { s, sigma: s1 }, G).unwrap();
        let b = null_cavendish_torque(&cfg, ViolationParams { s, sigma: s2 }, G).unwrap();
        prop_assert_eq!(a, b);
    }
}

#[test]
fn slab_bound_scaling() {
    let base = invert_s_slab(&slab(1.9e4, 2.1e4, 1e-6, 1.0, 1.0), G).unwrap().uncertainty;
    let thick = invert_s_slab(&slab(1.9e4, 2.1e4, 3e-6, 1.0, 1.0), G).unwrap().uncertainty;
    let wide = invert_s_slab(&slab(1.9e4, 2.1e4, 1e-6, 2.0, 1.5), G).unwrap().uncertainty;
    assert_relative_eq!(thick / base, 3.0, max_relative = 1e-14);
    assert_relative_eq!(wide / base, 1.0 / 3.0, max_relative = 1e-14);
}

#[test]
fn materials_table() {
    assert_relative_eq!(material_lookup("gold").unwrap(), 1.9e4, max_relative = 0.02);
    assert_relative_eq!(material_lookup("platinum").unwrap(), 2.1e4, max_relative = 0.03);
    match material_lookup("unobtanium") {
        Err(Error::UnknownMaterial { available, .. }) => assert!(available.contains(&"gold")),
        other => panic!("{other:?}"),
    }
    let cfg = SlabConfig::from_materials(["gold", "platinum"], 1e-5, 1.0, 1.0, 1e-15).unwrap();
    assert_eq!(cfg.rho1, material_lookup("gold").unwrap());
}

#[test]
fn lumped_films_follow_two_point_law() {
    // each film lumped at its own CM, a/2 apart
    let (rho1, rho2, a, b, c) = (1.93e4, 2.145e4, 1e-5, 0.01, 0.01);
    let (m1, m2) = (rho1 * a / 2.0 * b * c, rho2 * a / 2.0 * b * c);
    let s = 0.25;
    let (m1a, m2a) = ViolationParams { s, sigma: 0.0 }.active_masses(m1, m2);
    let p1 = Body::new(m1, m1a, Vec3::new(0.0, 0.0, a / 2.0)).unwrap();
    let p2 = Body::new(m2, m2a, Vec3::zeros()).unwrap();
    let two_point = rigid_self_acceleration(&p1, &p2, G).unwrap();

    let sys = NBodySystem::new(vec![p1, p2], G).unwrap().with_rigid_link(0, 1).unwrap();
    let t = 1.0;
    let traj = integrate(&sys, t / 100.0, 100).unwrap();
    let dx = traj.diagnostics.last().unwrap().passive_cm - traj.diagnostics[0].passive_cm;
    let simulated = 2.0 * dx / (t * t);
    assert!((simulated - two_point).norm() <= 1e-9 * two_point.norm(), "{simulated:?} vs {two_point:?}");

    let closed = slab_self_acceleration(&slab(rho1, rho2, a, b, c), s, G).unwrap();
    assert_relative_eq!(two_point.norm(), 2.0 * closed, max_relative = 1e-12);
}

#[test]
fn slab_oracle_limits() {
    use gauss_quad::GaussLegendre;
    let rule = GaussLegendre::new(24).unwrap();
    // far field: two b×c rectangles look like points
    let (b, c) = (1e-3, 2e-3);
    let h = 1.0;
    let k = common::plate_kernel(h, b, c, &rule);
    assert_relative_eq!(k * h * h, (b * c) * (b * c), max_relative = 1e-5);
    // near field: infinite-sheet value 2π per unit area
    let k0 = common::plate_kernel(1e-9, 1.0, 1.0, &rule);
    assert_relative_eq!(k0, 2.0 * std::f64::consts::PI, max_relative = 1e-6);

    // thin limit of the full integral: π·G·ρ_eff·a
    let (rho1, rho2, a) = (1.93e4, 2.145e4, 1e-6);
    let oracle = common::slab_oracle(rho1, rho2, a, 1.0, 1.0, G);
    let sheet = std::f64::consts::PI * G * rho1 * rho2 / (rho1 + rho2) * a;
    assert_relative_eq!(oracle, sheet, max_relative = 1e-4);
}

#[test]
fn unit_uncertainties_serialize_by_name() {
    let cfg: CavendishNullConfig = serde_json::from_str(
        r#"{"test_mass":0.01,"arm":{"value":0.1,"uncertainty":1e-5},"source_distance":0.1,
            "source_mass":10,"angular_acceleration":{"value":0,"uncertainty":1e-10}}"#,
    )
    .unwrap();
    assert_eq!(cfg.source_distance.sigma_abs, 0.0);
    assert_eq!(cfg.arm.sigma_abs, 1e-5);
    let b = invert_s_null(&cfg, G).unwrap();
    assert_eq!(b.inputs["arm"]["uncertainty"], serde_json::json!(1e-5));
}
