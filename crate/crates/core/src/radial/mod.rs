//! Radial potentials, weights and the radial law ν ∝ r^(n-1) e^(-V(r)).

mod measure;
mod potential;
mod weight;

use std::sync::Arc;

pub use measure::{Coordinate, MeasureOptions, RadialMeasure, WeightedKind};
pub use potential::{EffectivePotential, RadialPotential};
pub use weight::{Drift, Weight};

/// Shared scalar function of the radius.
pub type ScalarFn = Arc<dyn Fn(f64) -> f64 + Send + Sync>;

/// Log-spaced diagnostic radii strictly inside (lo, hi).
pub fn diagnostic_grid(lo: f64, hi: f64, count: usize) -> Vec<f64> {
    let (a, b) = (lo.ln(), hi.ln());
    (1..=count)
        .map(|i| (a + (b - a) * i as f64 / (count + 1) as f64).exp())
        .collect()
}

/// Compare an analytic derivative against a central difference with relative step 1e-5.
pub(crate) fn check_derivative(
    name: &str,
    f: &ScalarFn,
    df: &ScalarFn,
    grid: &[f64],
) -> crate::Result<()> {
    for &r in grid {
        let h = 1e-5 * r;
        let fd = (f(r + h) - f(r - h)) / (2.0 * h);
        let exact = df(r);
        // second term bounds the cancellation error of the difference quotient
        let tol = 1e-5 * 0.5 * (exact.abs() + fd.abs()) + 1e-9 * f(r).abs() / r;
        if !fd.is_finite() || !exact.is_finite() || (fd - exact).abs() > tol {
            return Err(crate::Error::InvalidInput(format!(
                "supplied derivative of {name} disagrees with finite difference at r = {r:e}: \
                 analytic {exact:e}, numeric {fd:e}"
            )));
        }
    }
    Ok(())
}
