use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Parameter {
    S,
    #[serde(rename = "sigma")]
    Sigma,
    #[serde(rename = "S_q")]
    Sq,
}

/// A constraint on one violation parameter.
///
/// A null result "`< 0 ± ΔS`" is `central = 0, uncertainty = ΔS`. `central`
/// keeps the sign of the generating formula.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BoundResult {
    pub parameter: Parameter,
    pub central: f64,
    pub uncertainty: f64,
    /// Second-order Gaussian correction to `uncertainty`, reported separately.
    #[serde(default)]
    pub second_order_uncertainty: f64,
    pub formula_id: String,
    /// The configuration the bound was computed from.
    pub inputs: serde_json::Value,
}
