//! Independent oracles shared by the integration tests.
#![allow(dead_code)]

use gauss_quad::GaussLegendre;

/// Piecewise Gauss-Legendre on `[0, hi]`, with breakpoints doubling from
/// `scale/64` so features near the origin at length `scale` are resolved.
pub fn graded(hi: f64, scale: f64, rule: &GaussLegendre, mut f: impl FnMut(f64) -> f64) -> f64 {
    let mut edges = vec![0.0];
    let mut x = scale / 64.0;
    while x < hi {
        edges.push(x);
        x *= 2.0;
    }
    edges.push(hi);
    edges.windows(2).map(|w| rule.integrate(w[0], w[1], &mut f)).sum()
}

/// Lateral kernel of two `b × c` rectangles stacked a height
/// `h` apart: `∫∫ (b−|u|)(c−|v|)·h/(u²+v²+h²)^{3/2} du dv` over `[−b,b]×[−c,c]`.
/// The `v` integral is done in closed form.
pub fn plate_kernel(h: f64, b: f64, c: f64, rule: &GaussLegendre) -> f64 {
    let inner = |u: f64| {
        let a2 = u * u + h * h;
        let a = a2.sqrt();
        let s = (a2 + c * c).sqrt();
        // ∫₀^c (c − v)·h/(a² + v²)^{3/2} dv
        c * c * h / (a2 * s) - h / a + h / s
    };
    4.0 * graded(b, h, rule, |u| (b - u) * inner(u))
}

/// Brute-force self-acceleration of two stacked slabs, each of thickness
/// `a/2` and lateral size `b × c`, densities `rho1` (lower) and `rho2`,
/// per unit `S`. The six-dimensional pairwise integral is reduced to
/// `∫₀ᵃ w(h)·K(h) dh` with `w(h) = min(h, a − h)` the distribution of vertical
/// offsets between the two layers.
pub fn slab_oracle(rho1: f64, rho2: f64, a: f64, b: f64, c: f64, g: f64) -> f64 {
    let rule = GaussLegendre::new(24).unwrap();
    let outer = GaussLegendre::new(32).unwrap();
    let mut f = |h: f64| h.min(a - h) * plate_kernel(h, b, c, &rule);
    let integral = graded(a / 2.0, a / 2.0, &outer, &mut f) + outer.integrate(a / 2.0, a, &mut f);
    let mass = (rho1 + rho2) * a / 2.0 * b * c;
    g * rho1 * rho2 * integral / mass
}

pub fn rel(a: f64, b: f64) -> f64 {
    (a - b).abs() / b.abs()
}
