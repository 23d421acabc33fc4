use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A value with its absolute one-sigma uncertainty (same unit).
///
/// Deserializes from either a bare number (exact) or
/// `{ value = …, uncertainty = … }`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "MeasuredRepr")]
pub struct Measured {
    pub value: f64,
    #[serde(rename = "uncertainty")]
    pub sigma_abs: f64,
}

#[derive(Deserialize)]
#[serde(untagged)]
enum MeasuredRepr {
    Exact(f64),
    Full {
        value: f64,
        #[serde(default)]
        uncertainty: f64,
    },
}

impl TryFrom<MeasuredRepr> for Measured {
    type Error = Error;

    fn try_from(repr: MeasuredRepr) -> Result<Self> {
        match repr {
            MeasuredRepr::Exact(v) => Measured::new(v, 0.0),
            MeasuredRepr::Full { value, uncertainty } => Measured::new(value, uncertainty),
        }
    }
}

impl Measured {
    pub fn new(value: f64, sigma_abs: f64) -> Result<Self> {
        if !value.is_finite() {
            return Err(Error::InvalidInput(format!("measured value {value} is not finite")));
        }
        if !(sigma_abs >= 0.0 && sigma_abs.is_finite()) {
            return Err(Error::InvalidInput(format!(
                "uncertainty must be a finite non-negative number, got {sigma_abs}"
            )));
        }
        Ok(Self { value, sigma_abs })
    }

    pub fn exact(value: f64) -> Self {
        Self {
            value,
            sigma_abs: 0.0,
        }
    }

    pub fn relative(&self) -> f64 {
        self.sigma_abs / self.value.abs()
    }

    pub(crate) fn require_positive(&self, what: &'static str) -> Result<()> {
        crate::error::positive(what, self.value).map(|_| ())
    }
}

struct Factor {
    value: f64,
    sigma: f64,
    power: i32,
}

/// `coefficient · Π xᵢ^pᵢ` with independent uncertain factors. Every bound in
/// this crate has this shape, so partials are taken analytically.
pub(crate) struct Monomial {
    coefficient: f64,
    factors: Vec<Factor>,
}

impl Monomial {
    pub fn new(coefficient: f64) -> Self {
        Self {
            coefficient,
            factors: Vec::new(),
        }
    }

    pub fn factor(mut self, m: Measured, power: i32) -> Self {
        self.factors.push(Factor {
            value: m.value,
            sigma: m.sigma_abs,
            power,
        });
        self
    }

    // Product with the exponent of factor i (and j) lowered by `di` (`dj`).
    fn product(&self, lowered: &[(usize, i32)]) -> f64 {
        self.factors
            .iter()
            .enumerate()
            .fold(self.coefficient, |acc, (k, f)| {
                let drop: i32 = lowered.iter().filter(|(i, _)| *i == k).map(|(_, d)| d).sum();
                let p = f.power - drop;
                if p == 0 {
                    acc
                } else {
                    acc * f.value.powi(p)
                }
            })
    }

    pub fn value(&self) -> f64 {
        self.product(&[])
    }

    pub fn partial(&self, i: usize) -> f64 {
        let p = self.factors[i].power;
        if p == 0 {
            return 0.0;
        }
        p as f64 * self.product(&[(i, 1)])
    }

    pub fn second_partial(&self, i: usize, j: usize) -> f64 {
        let (pi, pj) = (self.factors[i].power, self.factors[j].power);
        if i == j {
            let k = pi * (pi - 1);
            if k == 0 {
                return 0.0;
            }
            k as f64 * self.product(&[(i, 2)])
        } else {
            if pi == 0 || pj == 0 {
                return 0.0;
            }
            (pi * pj) as f64 * self.product(&[(i, 1), (j, 1)])
        }
    }

    /// `sqrt(Σ (∂f/∂xᵢ · σᵢ)²)`.
    pub fn first_order_sigma(&self) -> f64 {
        (0..self.factors.len())
            .map(|i| (self.partial(i) * self.factors[i].sigma).powi(2))
            .sum::<f64>()
            .sqrt()
    }

    /// `sqrt(½ Σᵢ Σⱼ (∂²f/∂xᵢ∂xⱼ)² σᵢ² σⱼ²)`, the leading Gaussian correction.
    pub fn second_order_sigma(&self) -> f64 {
        let n = self.factors.len();
        let mut var = 0.0;
        for i in 0..n {
            for j in 0..n {
                let s = self.factors[i].sigma * self.factors[j].sigma;
                var += 0.5 * (self.second_partial(i, j) * s).powi(2);
            }
        }
        var.sqrt()
    }
}
