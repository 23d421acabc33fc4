use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Material {
    pub label: &'static str,
    /// kg/m³ at room temperature.
    pub density: f64,
}

/// Bundled densities. Sources are listed in `docs/materials.md`.
pub const MATERIALS: &[Material] = &[
    Material { label: "gold", density: 1.93e4 },
    Material { label: "platinum", density: 2.145e4 },
    Material { label: "tungsten", density: 1.925e4 },
    Material { label: "lead", density: 1.134e4 },
    Material { label: "stainless_steel", density: 8.0e3 },
    Material { label: "aluminum", density: 2.70e3 },
    Material { label: "iron", density: 7.874e3 },
    Material { label: "teflon", density: 2.2e3 },
    Material { label: "caf2", density: 3.18e3 },
];

fn normalize(label: &str) -> String {
    let l = label.trim().to_lowercase().replace(['-', ' '], "_");
    match l.as_str() {
        "au" => "gold".into(),
        "pt" => "platinum".into(),
        "w" => "tungsten".into(),
        "pb" => "lead".into(),
        "fe" => "iron".into(),
        "al" | "aluminium" => "aluminum".into(),
        "ptfe" => "teflon".into(),
        "calcium_fluoride" => "caf2".into(),
        _ => l,
    }
}

pub fn material_lookup(label: &str) -> Result<f64> {
    let key = normalize(label);
    MATERIALS
        .iter()
        .find(|m| m.label == key)
        .map(|m| m.density)
        .ok_or_else(|| Error::UnknownMaterial {
            label: label.to_string(),
            available: MATERIALS.iter().map(|m| m.label).collect(),
        })
}
