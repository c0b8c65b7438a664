//! Finite-volume discretization of the weighted Dirichlet form.
//!
//! Cells live in the measure's coordinate t. Masses are cell integrals of ν,
//! face conductances are σ²·(dν/dr)/(dr/dt) at the face divided by the distance
//! between neighbouring cell centers. Everything is kept in logarithms so far
//! tails neither underflow nor overflow.

use super::grid::MeshMap;
use super::tridiag::SymTridiagonal;
use crate::error::{Error, Result};
use crate::quadrature::{WGK, XGK};
use crate::radial::{RadialMeasure, Weight};

#[derive(Debug, Clone)]
pub struct Discretization {
    nodes: Vec<f64>,
    centers: Vec<f64>,
    radii: Vec<f64>,
    ln_mass: Vec<f64>,
    ln_conductance: Vec<f64>,
    r_end: f64,
}

fn log_sum_exp(xs: &[f64]) -> f64 {
    let m = xs.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
    if !m.is_finite() {
        return m;
    }
    m + xs.iter().map(|x| (x - m).exp()).sum::<f64>().ln()
}

impl Discretization {
    pub(crate) fn build(measure: &RadialMeasure, weight: &Weight, map: &MeshMap, cells: usize) -> Result<Self> {
        if cells < 2 {
            return Err(Error::InvalidInput("need at least two cells".into()));
        }
        let coord = measure.coordinate();
        let nodes = map.nodes(cells);
        if nodes.windows(2).any(|w| !(w[1] > w[0])) {
            return Err(Error::DiscretizationError("mesh nodes are not strictly increasing".into()));
        }
        let ln_m = |t: f64| measure.ln_weight(coord.to_radius(t)) + coord.ln_jacobian(t);
        let mut ln_mass = Vec::with_capacity(cells);
        let mut vals = [0.0; 15];
        for w in nodes.windows(2) {
            let (a, b) = (w[0], w[1]);
            let (c, h) = (0.5 * (a + b), 0.5 * (b - a));
            for k in 0..7 {
                vals[k] = ln_m(c - h * XGK[k]);
                vals[14 - k] = ln_m(c + h * XGK[k]);
            }
            vals[7] = ln_m(c);
            if vals.iter().any(|v| v.is_nan() || *v == f64::INFINITY) {
                return Err(Error::DiscretizationError(format!("density not finite on cell [{a}, {b}]")));
            }
            let peak = vals.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
            let mut s = WGK[7] * (vals[7] - peak).exp();
            for k in 0..7 {
                s += WGK[k] * ((vals[k] - peak).exp() + (vals[14 - k] - peak).exp());
            }
            let lm = peak + (s * h).ln();
            if !lm.is_finite() {
                return Err(Error::DiscretizationError(format!("cell mass underflows on [{a}, {b}]")));
            }
            ln_mass.push(lm);
        }
        let ln_total = log_sum_exp(&ln_mass);
        ln_mass.iter_mut().for_each(|m| *m -= ln_total);

        let centers: Vec<f64> = nodes.windows(2).map(|w| 0.5 * (w[0] + w[1])).collect();
        let mut ln_conductance = Vec::with_capacity(cells - 1);
        for i in 1..cells {
            let t = nodes[i];
            let r = coord.to_radius(t);
            let s2 = weight.s2(r);
            if !(s2 > 0.0 && s2.is_finite()) {
                return Err(Error::DiscretizationError(format!("weight not positive at r = {r}")));
            }
            // σ² (dν/dt) / (dr/dt)²
            let lc = s2.ln() + ln_m(t) - 2.0 * coord.ln_jacobian(t) - ln_total - (centers[i] - centers[i - 1]).ln();
            if lc.is_nan() || lc == f64::INFINITY {
                return Err(Error::DiscretizationError(format!("face conductance not finite at r = {r}")));
            }
            ln_conductance.push(lc);
        }
        let radii = centers.iter().map(|&t| coord.to_radius(t)).collect();
        let r_end = coord.to_radius(*nodes.last().unwrap());
        Ok(Discretization { nodes, centers, radii, ln_mass, ln_conductance, r_end })
    }

    pub fn cells(&self) -> usize {
        self.centers.len()
    }

    /// Mesh nodes in the computational coordinate.
    pub fn nodes(&self) -> &[f64] {
        &self.nodes
    }

    /// Cell centers as radii.
    pub fn radii(&self) -> &[f64] {
        &self.radii
    }

    pub fn r_end(&self) -> f64 {
        self.r_end
    }

    /// Diagonal mass matrix, normalized to total mass one.
    pub fn mass(&self) -> Vec<f64> {
        self.ln_mass.iter().map(|m| m.exp()).collect()
    }

    pub fn ln_mass(&self) -> &[f64] {
        &self.ln_mass
    }

    /// Conductances of the interior faces.
    pub fn conductance(&self) -> Vec<f64> {
        self.ln_conductance.iter().map(|c| c.exp()).collect()
    }

    /// Stiffness matrix K as (diagonal, off-diagonal).
    pub fn stiffness(&self) -> (Vec<f64>, Vec<f64>) {
        let c = self.conductance();
        let n = self.cells();
        let mut diag = vec![0.0; n];
        for (i, ci) in c.iter().enumerate() {
            diag[i] += ci;
            diag[i + 1] += ci;
        }
        let off = c.iter().map(|x| -x).collect();
        (diag, off)
    }

    /// The symmetric operator M^(-1/2) K M^(-1/2).
    pub fn operator(&self) -> Result<SymTridiagonal> {
        let n = self.cells();
        let lm = &self.ln_mass;
        let lc = &self.ln_conductance;
        let mut diag = vec![0.0; n];
        let mut off = Vec::with_capacity(n - 1);
        for i in 0..n - 1 {
            diag[i] += (lc[i] - lm[i]).exp();
            diag[i + 1] += (lc[i] - lm[i + 1]).exp();
            off.push(-(lc[i] - 0.5 * (lm[i] + lm[i + 1])).exp());
        }
        SymTridiagonal::new(diag, off)
    }

    /// Discrete Rayleigh quotient of cell values g.
    pub fn rayleigh(&self, g: &[f64]) -> Result<f64> {
        let m = self.mass();
        let c = self.conductance();
        let mean: f64 = g.iter().zip(&m).map(|(a, b)| a * b).sum();
        let var: f64 = g.iter().zip(&m).map(|(a, b)| (a - mean).powi(2) * b).sum();
        if var < 1e-14 {
            return Err(Error::DegenerateFunction(format!("discrete variance {var:e}")));
        }
        let energy: f64 = c.iter().enumerate().map(|(i, ci)| ci * (g[i + 1] - g[i]).powi(2)).sum();
        Ok(energy / var)
    }
}
