//! Computational meshes in the measure's coordinate t.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::interp::MonotoneCubic;
use crate::radial::RadialMeasure;

/// Smallest admissible cell count; valid counts are this times a power of two.
pub const BASE_CELLS: usize = 64;

/// Cell-width grading rule.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case", tag = "kind", content = "strength")]
pub enum Grading {
    Uniform,
    /// Widths proportional to (density)^(-1/2), clipped to a `strength`:1 ratio.
    Graded(f64),
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GridSpec {
    pub n_cells: usize,
    pub grading: Grading,
    pub r_max_override: Option<f64>,
}

impl Default for GridSpec {
    fn default() -> Self {
        GridSpec { n_cells: 4096, grading: Grading::Graded(50.0), r_max_override: None }
    }
}

impl GridSpec {
    pub fn with_cells(n_cells: usize) -> Self {
        GridSpec { n_cells, ..GridSpec::default() }
    }

    pub fn validate(&self) -> Result<()> {
        if self.n_cells < BASE_CELLS
            || !self.n_cells.is_multiple_of(BASE_CELLS)
            || !(self.n_cells / BASE_CELLS).is_power_of_two()
        {
            return Err(Error::InvalidInput(format!(
                "n_cells must be {BASE_CELLS} times a power of two, got {}",
                self.n_cells
            )));
        }
        if let Grading::Graded(s) = self.grading {
            if !(s.is_finite() && s >= 1.0) {
                return Err(Error::InvalidInput(format!("grading strength must be >= 1, got {s}")));
            }
        }
        if let Some(r) = self.r_max_override {
            if !(r.is_finite() && r > 0.0) {
                return Err(Error::InvalidInput(format!("r_max override must be positive, got {r}")));
            }
        }
        Ok(())
    }
}

/// Monotone map from [0, 1] onto [0, t_end] whose uniform images give the mesh.
#[derive(Debug, Clone)]
pub struct MeshMap {
    t_end: f64,
    cumulative: Option<MonotoneCubic>,
    total: f64,
}

const MAP_POINTS: usize = 8192;

impl MeshMap {
    pub fn new(measure: &RadialMeasure, t_end: f64, grading: Grading) -> Result<Self> {
        let strength = match grading {
            Grading::Uniform => return Ok(MeshMap { t_end, cumulative: None, total: t_end }),
            Grading::Graded(s) => s,
        };
        let coord = measure.coordinate();
        let ln_m = |t: f64| {
            if t <= 0.0 {
                return f64::NEG_INFINITY;
            }
            measure.ln_weight(coord.to_radius(t)) + coord.ln_jacobian(t)
        };
        let ts: Vec<f64> = (0..=MAP_POINTS).map(|k| t_end * k as f64 / MAP_POINTS as f64).collect();
        let lm: Vec<f64> = ts.iter().map(|&t| ln_m(t)).collect();
        if lm.iter().any(|x| x.is_nan()) {
            return Err(Error::DiscretizationError("density is NaN on the mesh table".into()));
        }
        let peak = lm.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
        if !peak.is_finite() {
            return Err(Error::DiscretizationError("density vanishes on the mesh table".into()));
        }
        let floor = 1.0 / strength;
        let dens: Vec<f64> = lm.iter().map(|&l| (0.5 * (l - peak)).exp() + floor).collect();
        let mut cum = Vec::with_capacity(ts.len());
        cum.push(0.0);
        for k in 1..ts.len() {
            let step = 0.5 * (dens[k] + dens[k - 1]) * (ts[k] - ts[k - 1]);
            cum.push(cum[k - 1] + step);
        }
        let total = *cum.last().unwrap();
        let cumulative = MonotoneCubic::new(ts, cum, Some(dens))?;
        Ok(MeshMap { t_end, cumulative: Some(cumulative), total })
    }

    /// Integrated cell density over the whole map; cells per unit of it is
    /// the mesh resolution.
    pub fn total(&self) -> f64 {
        self.total
    }

    /// Integrated cell density over [0, t].
    pub fn cumulative(&self, t: f64) -> f64 {
        match &self.cumulative {
            None => t.clamp(0.0, self.t_end),
            Some(c) => c.eval(t),
        }
    }

    /// Mesh nodes t_0 = 0 < … < t_cells = t_end.
    pub fn nodes(&self, cells: usize) -> Vec<f64> {
        let mut out: Vec<f64> = (0..=cells)
            .map(|k| {
                let x = k as f64 / cells as f64;
                match &self.cumulative {
                    None => self.t_end * x,
                    Some(c) => c.inverse(self.total * x),
                }
            })
            .collect();
        out[0] = 0.0;
        out[cells] = self.t_end;
        out
    }
}
