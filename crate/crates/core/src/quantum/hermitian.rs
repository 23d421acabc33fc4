//! Small dense Hermitian matrices and a cyclic Jacobi eigen-solver.

use nalgebra::DMatrix;
pub use nalgebra::Complex;

use crate::error::{Error, Result};

pub type CMatrix = DMatrix<Complex<f64>>;

/// Relative tolerance for accepting a matrix as Hermitian.
pub const HERMITIAN_TOLERANCE: f64 = 1e-12;

const MAX_SWEEPS: usize = 64;

pub fn diagonal(values: &[f64]) -> CMatrix {
    let n = values.len();
    CMatrix::from_fn(n, n, |i, j| {
        if i == j {
            Complex::new(values[i], 0.0)
        } else {
            Complex::new(0.0, 0.0)
        }
    })
}

fn max_abs(m: &CMatrix) -> f64 {
    m.iter().map(|z| z.norm()).fold(0.0, f64::max)
}

/// `max|A − Aᴴ| / max|A|` (0 for the zero matrix, ∞ if not square).
pub fn hermitian_deviation(m: &CMatrix) -> f64 {
    if !m.is_square() {
        return f64::INFINITY;
    }
    let scale = max_abs(m);
    if scale == 0.0 {
        return 0.0;
    }
    max_abs(&(m - m.adjoint())) / scale
}

pub(crate) fn require_hermitian(m: &CMatrix, what: &'static str) -> Result<()> {
    if !m.is_square() {
        return Err(Error::DimensionMismatch(format!(
            "{what} is {}×{}, expected square",
            m.nrows(),
            m.ncols()
        )));
    }
    if m.nrows() == 0 {
        return Err(Error::DimensionMismatch(format!("{what} is empty")));
    }
    let deviation = hermitian_deviation(m);
    if deviation > HERMITIAN_TOLERANCE {
        return Err(Error::NotHermitian { what, deviation });
    }
    Ok(())
}

/// Spectral decomposition `A = V·diag(values)·Vᴴ`, values ascending,
/// eigenvectors in the columns of `vectors`.
#[derive(Debug, Clone, PartialEq)]
pub struct Eigh {
    pub values: Vec<f64>,
    pub vectors: CMatrix,
}

impl Eigh {
    pub fn reconstruct(&self) -> CMatrix {
        &self.vectors * diagonal(&self.values) * self.vectors.adjoint()
    }
}

/// Cyclic Jacobi diagonalization of a Hermitian matrix.
///
/// Each rotation first removes the phase of `a_pq` with a diagonal unitary,
/// then applies the real symmetric Jacobi rotation that zeroes it.
pub fn eigh(m: &CMatrix) -> Result<Eigh> {
    require_hermitian(m, "matrix")?;
    let n = m.nrows();
    let mut a = (m + m.adjoint()).scale(0.5);
    let mut v = CMatrix::identity(n, n);
    let scale = a.norm();
    if scale == 0.0 {
        return Ok(Eigh {
            values: vec![0.0; n],
            vectors: v,
        });
    }
    let zero = Complex::new(0.0, 0.0);

    for _ in 0..MAX_SWEEPS {
        let off: f64 = (0..n)
            .flat_map(|p| (0..n).filter(move |&q| q != p).map(move |q| (p, q)))
            .map(|(p, q)| a[(p, q)].norm_sqr())
            .sum::<f64>()
            .sqrt();
        if off <= f64::EPSILON * scale {
            return Ok(sorted(a, v));
        }
        for p in 0..n - 1 {
            for q in p + 1..n {
                let apq = a[(p, q)];
                let beta = apq.norm();
                if beta <= 1e-3 * f64::EPSILON * scale {
                    continue;
                }
                let phase = apq / beta;
                let zeta = (a[(q, q)].re - a[(p, p)].re) / (2.0 * beta);
                let sign = if zeta >= 0.0 { 1.0 } else { -1.0 };
                let t = sign / (zeta.abs() + zeta.hypot(1.0));
                let c = 1.0 / t.hypot(1.0);
                let s = t * c;
                // J = diag(1, e^{-iφ})·[[c, s], [-s, c]]
                let jpp = Complex::new(c, 0.0);
                let jpq = Complex::new(s, 0.0);
                let jqp = -phase.conj() * s;
                let jqq = phase.conj() * c;

                for k in 0..n {
                    let (akp, akq) = (a[(k, p)], a[(k, q)]);
                    a[(k, p)] = akp * jpp + akq * jqp;
                    a[(k, q)] = akp * jpq + akq * jqq;
                    let (vkp, vkq) = (v[(k, p)], v[(k, q)]);
                    v[(k, p)] = vkp * jpp + vkq * jqp;
                    v[(k, q)] = vkp * jpq + vkq * jqq;
                }
                for k in 0..n {
                    let (apk, aqk) = (a[(p, k)], a[(q, k)]);
                    a[(p, k)] = jpp.conj() * apk + jqp.conj() * aqk;
                    a[(q, k)] = jpq.conj() * apk + jqq.conj() * aqk;
                }
                a[(p, q)] = zero;
                a[(q, p)] = zero;
                a[(p, p)].im = 0.0;
                a[(q, q)].im = 0.0;
            }
        }
    }
    Err(Error::NoConvergence { sweeps: MAX_SWEEPS })
}

fn sorted(a: CMatrix, v: CMatrix) -> Eigh {
    let n = a.nrows();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| a[(i, i)].re.total_cmp(&a[(j, j)].re));
    Eigh {
        values: order.iter().map(|&i| a[(i, i)].re).collect(),
        vectors: CMatrix::from_fn(n, n, |r, c| v[(r, order[c])]),
    }
}
