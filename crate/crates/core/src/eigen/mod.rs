//! Neumann spectral gap of the weighted radial operator
//! L g = σ² g'' + b g' by finite volumes, Sturm bisection and Richardson
//! extrapolation in the mesh width.

mod discretize;
mod grid;
mod tridiag;

pub use discretize::Discretization;
pub use grid::{Grading, GridSpec, MeshMap, BASE_CELLS};
pub use tridiag::SymTridiagonal;

use serde::{Deserialize, Serialize};

use crate::bounds::CandidateFunction;
use crate::error::{Error, Result};
use crate::radial::{RadialMeasure, Weight};

/// Tail mass left outside the initial computational window.
pub const SOLVER_TAIL_TOL: f64 = 1e-10;

/// Cell values of the computed eigenfunction.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Eigenfunction {
    pub radii: Vec<f64>,
    pub values: Vec<f64>,
    /// ν-mass of each cell.
    pub masses: Vec<f64>,
}

impl Eigenfunction {
    pub fn mean(&self) -> f64 {
        self.values.iter().zip(&self.masses).map(|(g, m)| g * m).sum()
    }

    pub fn norm(&self) -> f64 {
        self.values.iter().zip(&self.masses).map(|(g, m)| g * g * m).sum::<f64>().sqrt()
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GapEstimate {
    pub value: f64,
    pub error_estimate: f64,
    /// Eigenvalues on the N and 2N meshes of the final window.
    pub coarse: f64,
    pub fine: f64,
    pub n_cells_used: usize,
    pub r_max_used: f64,
    /// True when the value comes from extrapolation in the window length.
    pub window_extrapolated: bool,
    pub warnings: Vec<String>,
    #[serde(skip)]
    pub eigenfunction: Option<Eigenfunction>,
}

/// Discretize on the window chosen by `grid` (or the solver truncation radius).
pub fn discretize(measure: &RadialMeasure, weight: &Weight, grid: &GridSpec) -> Result<Discretization> {
    grid.validate()?;
    let t_end = initial_window(measure, grid)?;
    let map = MeshMap::new(measure, t_end, grid.grading)?;
    Discretization::build(measure, weight, &map, grid.n_cells)
}

fn initial_window(measure: &RadialMeasure, grid: &GridSpec) -> Result<f64> {
    let coord = measure.coordinate();
    let r = match grid.r_max_override {
        Some(r) => r.min(measure.domain_end()),
        None => measure.truncation_radius(SOLVER_TAIL_TOL)?,
    };
    Ok(coord.from_radius(r))
}

struct Level {
    t_end: f64,
    coarse: f64,
    fine: f64,
    value: f64,
    error: f64,
    cells: usize,
    disc: Discretization,
    op: SymTridiagonal,
}

fn solve_level(
    measure: &RadialMeasure,
    weight: &Weight,
    t_end: f64,
    grading: Grading,
    cells: usize,
) -> Result<Level> {
    let map = MeshMap::new(measure, t_end, grading)?;
    let coarse_disc = Discretization::build(measure, weight, &map, cells)?;
    let coarse = coarse_disc.operator()?.eigenvalue(1)?;
    let disc = Discretization::build(measure, weight, &map, 2 * cells)?;
    let op = disc.operator()?;
    let fine = op.eigenvalue(1)?;
    Ok(Level {
        t_end,
        coarse,
        fine,
        value: fine + (fine - coarse) / 3.0,
        error: (coarse - fine).abs() / 3.0,
        cells: 2 * cells,
        disc,
        op,
    })
}

/// Fit λ(T) = L + A/(T + δ)² through three (T, λ) points and return L.
fn window_limit(pts: &[(f64, f64); 3]) -> Option<f64> {
    let [(t1, l1), (t2, l2), (t3, l3)] = *pts;
    if (l1 - l3).abs() <= 1e-13 * (1.0 + l3.abs()) {
        return Some(l3);
    }
    let fit = |d: f64| {
        let (a2, a3) = ((t2 + d).powi(-2), (t3 + d).powi(-2));
        let a = (l2 - l3) / (a2 - a3);
        let lim = l3 - a * a3;
        (lim, lim + a * (t1 + d).powi(-2) - l1)
    };
    let lo = -0.9 * t1;
    let samples: Vec<f64> = (0..=400).map(|k| lo + (50.0 * t3 - lo) * (k as f64 / 400.0).powi(3)).collect();
    let mut prev = (samples[0], fit(samples[0]).1);
    for &d in &samples[1..] {
        let cur = (d, fit(d).1);
        if prev.1.is_finite() && cur.1.is_finite() && prev.1.signum() != cur.1.signum() {
            let (mut a, mut b, mut fa) = (prev.0, cur.0, prev.1);
            for _ in 0..200 {
                let m = 0.5 * (a + b);
                let fm = fit(m).1;
                if fm.signum() == fa.signum() {
                    a = m;
                    fa = fm;
                } else {
                    b = m;
                }
            }
            return Some(fit(0.5 * (a + b)).0);
        }
        prev = cur;
    }
    None
}

/// Neumann spectral gap of −L on the radial measure with the given weight.
pub fn spectral_gap(measure: &RadialMeasure, weight: &Weight, grid: &GridSpec) -> Result<GapEstimate> {
    grid.validate()?;
    let t0 = initial_window(measure, grid)?;
    let mut warnings = Vec::new();
    let base = solve_level(measure, weight, t0, grid.grading, grid.n_cells)?;
    let bounded = measure.domain_end().is_finite();
    if bounded {
        return finish(base, false, warnings);
    }
    let coord = measure.coordinate();
    let t_cap = coord.from_radius(measure.window_cap());
    let base_total = MeshMap::new(measure, t0, grid.grading)?.total();
    let cells_for = |t: f64| -> Result<usize> {
        let total = MeshMap::new(measure, t, grid.grading)?.total();
        let c = (grid.n_cells as f64 * total / base_total).ceil() as usize;
        Ok(c.max(grid.n_cells))
    };

    let mut current = base;
    loop {
        if current.t_end >= t_cap {
            break;
        }
        let t_next = (2.0 * current.t_end).min(t_cap);
        let next = match cells_for(t_next)
            .and_then(|c| solve_level(measure, weight, t_next, grid.grading, c))
        {
            Ok(level) => level,
            Err(Error::DiscretizationError(msg)) => {
                warnings.push(format!("window not extended beyond r = {:e}: {msg}", coord.to_radius(current.t_end)));
                return finish(current, false, warnings);
            }
            Err(e) => return Err(e),
        };
        let shift = (next.value - current.value).abs();
        let err = current.error.max(next.error);
        // settled: the window no longer moves the gap beyond the mesh error
        if shift <= err.max(1e-9 * (1.0 + next.value.abs())) {
            return finish(next, false, warnings);
        }
        if warnings.is_empty() && shift > 10.0 * err {
            warnings.push(format!(
                "truncation: enlarging the window to r = {:e} moved the gap by {shift:e}",
                coord.to_radius(t_next)
            ));
        }
        current = next;
    }

    // The window hit the radius cap without settling: the gap sits at the
    // bottom of a continuous spectrum and the window eigenvalue decays like
    // A/(T + δ)². Extrapolate from windows at fractions of the cap.
    let fractions = [1.0 / 3.0, 0.5, 2.0 / 3.0, 0.75];
    let mut pts = Vec::with_capacity(fractions.len());
    let mut errs = current.error;
    for f in fractions {
        let t = f * t_cap;
        let level = solve_level(measure, weight, t, grid.grading, cells_for(t)?)?;
        errs = errs.max(level.error);
        pts.push((t, level.value));
    }
    let last = (current.t_end, current.value);
    let primary = window_limit(&[pts[1], pts[3], last]);
    let check = window_limit(&[pts[0], pts[2], last]);
    let (Some(l1), Some(l2)) = (primary, check) else {
        return Err(Error::ConvergenceError("window extrapolation failed".into()));
    };
    warnings.push("gap extrapolated in the window length".into());
    let mut est = finish(current, true, warnings)?;
    est.error_estimate = est.error_estimate.max(errs) + (l1 - l2).abs();
    est.value = l1.max(0.0);
    Ok(est)
}

fn finish(level: Level, extrapolated: bool, warnings: Vec<String>) -> Result<GapEstimate> {
    let lm = level.disc.ln_mass();
    let q: Vec<f64> = lm.iter().map(|m| (0.5 * m).exp()).collect();
    let v = level.op.eigenvector(level.fine, &[q])?;
    let mut values: Vec<f64> = v
        .iter()
        .zip(lm)
        .map(|(&x, &m)| if x == 0.0 { 0.0 } else { x.signum() * (x.abs().ln() - 0.5 * m).exp() })
        .collect();
    let masses = level.disc.mass();
    // orient so that the eigenfunction increases on average
    let corr: f64 = values.iter().zip(&masses).zip(level.disc.radii()).map(|((g, m), r)| g * m * r).sum();
    if corr < 0.0 {
        values.iter_mut().for_each(|g| *g = -*g);
    }
    if !level.value.is_finite() {
        return Err(Error::ConvergenceError("non-finite gap".into()));
    }
    Ok(GapEstimate {
        value: level.value.max(0.0),
        error_estimate: level.error,
        coarse: level.coarse,
        fine: level.fine,
        n_cells_used: level.cells,
        r_max_used: level.disc.r_end(),
        window_extrapolated: extrapolated,
        warnings,
        eigenfunction: Some(Eigenfunction { radii: level.disc.radii().to_vec(), values, masses }),
    })
}

/// sup over the diagnostic grid of |σ² f'' + b f' + λ f − c| / (1 + |f|).
///
/// For λ = 0 the constant c is chosen to minimize the supremum; otherwise c = 0.
pub fn residual_check(measure: &RadialMeasure, weight: &Weight, f: &CandidateFunction, lambda: f64) -> Result<f64> {
    let drift = measure.drift(weight);
    let grid = measure.diagnostic_grid(256);
    let mut rows = Vec::with_capacity(grid.len());
    for &r in &grid {
        let res = weight.s2(r) * f.d2f(r) + drift.value(r)? * f.df(r) + lambda * f.f(r);
        if !res.is_finite() {
            return Err(Error::DomainError(format!("residual not finite at r = {r}")));
        }
        rows.push((res, 1.0 + f.f(r).abs()));
    }
    let c = if lambda == 0.0 {
        let hi = rows.iter().map(|x| x.0).fold(f64::NEG_INFINITY, f64::max);
        let lo = rows.iter().map(|x| x.0).fold(f64::INFINITY, f64::min);
        0.5 * (hi + lo)
    } else {
        0.0
    };
    Ok(rows.iter().map(|(res, s)| (res - c).abs() / s).fold(0.0, f64::max))
}
