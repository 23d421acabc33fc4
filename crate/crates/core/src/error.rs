use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("{what} must be positive and finite, got {value}")]
    NonPositive { what: &'static str, value: f64 },

    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("singular configuration: bodies {0} and {1} coincide")]
    Singular(usize, usize),

    #[error("constraint projection diverged: link ({i}, {j}) off by {relative_error:e} relative")]
    ConstraintDivergence {
        i: usize,
        j: usize,
        relative_error: f64,
    },

    #[error("integration failed at step {step}: {source}")]
    Step {
        step: usize,
        #[source]
        source: Box<Error>,
    },

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("{what} is not Hermitian (deviation {deviation:e})")]
    NotHermitian { what: &'static str, deviation: f64 },

    #[error("state is not normalized (norm {norm})")]
    NotNormalized { norm: f64 },

    #[error("weak-field expansion invalid: internal energy / rest energy = {ratio:e} exceeds {limit:e}")]
    WeakField { ratio: f64, limit: f64 },

    #[error("eigen-solver did not converge after {sweeps} sweeps")]
    NoConvergence { sweeps: usize },

    #[error("unknown material `{label}`; available: {}", available.join(", "))]
    UnknownMaterial {
        label: String,
        available: Vec<&'static str>,
    },
}

pub(crate) fn positive(what: &'static str, value: f64) -> Result<f64> {
    if value.is_finite() && value > 0.0 {
        Ok(value)
    } else {
        Err(Error::NonPositive { what, value })
    }
}
