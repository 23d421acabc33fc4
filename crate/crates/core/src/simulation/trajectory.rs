use std::io::{self, Write};

use serde::{Deserialize, Serialize};

use super::State;
use crate::Vec3;

/// Per-frame bookkeeping. Passive and active centers of mass are both kept
/// because they stop coinciding once `m_a ≠ m_p`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Diagnostics {
    pub momentum: Vec3,
    pub passive_cm: Vec3,
    pub active_cm: Vec3,
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct Trajectory {
    pub times: Vec<f64>,
    pub states: Vec<State>,
    pub diagnostics: Vec<Diagnostics>,
}

impl Trajectory {
    pub(crate) fn with_capacity(n: usize) -> Self {
        Self {
            times: Vec::with_capacity(n),
            states: Vec::with_capacity(n),
            diagnostics: Vec::with_capacity(n),
        }
    }

    pub(crate) fn push(&mut self, time: f64, state: State, diagnostics: Diagnostics) {
        self.times.push(time);
        self.states.push(state);
        self.diagnostics.push(diagnostics);
    }

    pub fn len(&self) -> usize {
        self.times.len()
    }

    pub fn is_empty(&self) -> bool {
        self.times.is_empty()
    }

    pub fn body_count(&self) -> usize {
        self.states.first().map_or(0, |s| s.positions.len())
    }

    /// CSV header for a trajectory of `n_bodies` bodies:
    ///
    /// `time, x0, y0, z0, vx0, vy0, vz0, …, px, py, pz, cm_x, cm_y, cm_z, acm_x, acm_y, acm_z`
    ///
    /// Body indices are zero-based; `cm_*` is the passive and `acm_*` the
    /// active center of mass.
    pub fn csv_header(n_bodies: usize) -> String {
        let mut cols = vec!["time".to_string()];
        for b in 0..n_bodies {
            for c in ["x", "y", "z", "vx", "vy", "vz"] {
                cols.push(format!("{c}{b}"));
            }
        }
        for c in [
            "px", "py", "pz", "cm_x", "cm_y", "cm_z", "acm_x", "acm_y", "acm_z",
        ] {
            cols.push(c.to_string());
        }
        cols.join(",")
    }

    pub fn write_csv<W: Write>(&self, mut out: W) -> io::Result<()> {
        writeln!(out, "{}", Self::csv_header(self.body_count()))?;
        for ((t, state), diag) in self.times.iter().zip(&self.states).zip(&self.diagnostics) {
            let mut row = vec![t.to_string()];
            for (x, v) in state.positions.iter().zip(&state.velocities) {
                row.extend(x.iter().chain(v.iter()).map(f64::to_string));
            }
            for vec in [diag.momentum, diag.passive_cm, diag.active_cm] {
                row.extend(vec.iter().map(f64::to_string));
            }
            writeln!(out, "{}", row.join(","))?;
        }
        Ok(())
    }
}
