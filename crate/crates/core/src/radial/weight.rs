use std::fmt;
use std::sync::Arc;

use super::{check_derivative, RadialPotential, ScalarFn};
use crate::error::{Error, Result};

/// Radial weight σ with σ² and their first two derivatives.
#[derive(Clone)]
pub struct Weight {
    s2: ScalarFn,
    ds2: ScalarFn,
    d2s2: ScalarFn,
    s: ScalarFn,
    ds: ScalarFn,
    d2s: ScalarFn,
    label: String,
}

impl fmt::Debug for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Weight").field("label", &self.label).finish_non_exhaustive()
    }
}

fn arc<F: Fn(f64) -> f64 + Send + Sync + 'static>(f: F) -> ScalarFn {
    Arc::new(f)
}

impl Weight {
    /// σ ≡ 1, which reduces every weighted object to its unweighted form.
    pub fn unit() -> Self {
        Weight {
            s2: arc(|_| 1.0),
            ds2: arc(|_| 0.0),
            d2s2: arc(|_| 0.0),
            s: arc(|_| 1.0),
            ds: arc(|_| 0.0),
            d2s: arc(|_| 0.0),
            label: "unit".into(),
        }
    }

    /// Build from σ², (σ²)', (σ²)'', σ, σ', σ''.
    #[allow(clippy::too_many_arguments)]
    pub fn new<A, B, C, D, E, F>(label: &str, s2: A, ds2: B, d2s2: C, s: D, ds: E, d2s: F) -> Self
    where
        A: Fn(f64) -> f64 + Send + Sync + 'static,
        B: Fn(f64) -> f64 + Send + Sync + 'static,
        C: Fn(f64) -> f64 + Send + Sync + 'static,
        D: Fn(f64) -> f64 + Send + Sync + 'static,
        E: Fn(f64) -> f64 + Send + Sync + 'static,
        F: Fn(f64) -> f64 + Send + Sync + 'static,
    {
        Weight {
            s2: arc(s2),
            ds2: arc(ds2),
            d2s2: arc(d2s2),
            s: arc(s),
            ds: arc(ds),
            d2s: arc(d2s),
            label: label.to_string(),
        }
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn s2(&self, r: f64) -> f64 {
        (self.s2)(r)
    }
    pub fn ds2(&self, r: f64) -> f64 {
        (self.ds2)(r)
    }
    pub fn d2s2(&self, r: f64) -> f64 {
        (self.d2s2)(r)
    }
    pub fn s(&self, r: f64) -> f64 {
        (self.s)(r)
    }
    pub fn ds(&self, r: f64) -> f64 {
        (self.ds)(r)
    }
    pub fn d2s(&self, r: f64) -> f64 {
        (self.d2s)(r)
    }

    /// Ellipticity, σ² = (σ)² consistency and derivative self-checks on `grid`.
    pub fn check(&self, grid: &[f64]) -> Result<()> {
        for &r in grid {
            let s2 = self.s2(r);
            if !(s2 > 0.0) || !s2.is_finite() {
                return Err(Error::InvalidInput(format!("weight not elliptic: σ²({r:e}) = {s2:e}")));
            }
            let s = self.s(r);
            if ((s * s - s2) / s2).abs() > 1e-12 {
                return Err(Error::InvalidInput(format!(
                    "σ({r:e})² = {:e} does not match σ² = {s2:e}",
                    s * s
                )));
            }
        }
        check_derivative("σ²", &self.s2, &self.ds2, grid)?;
        check_derivative("(σ²)'", &self.ds2, &self.d2s2, grid)?;
        check_derivative("σ", &self.s, &self.ds, grid)?;
        check_derivative("σ'", &self.ds, &self.d2s, grid)
    }
}

/// Drift b(r) = (σ²)'(r) - σ²(r)(V'(r) - (n-1)/r) of the weighted radial generator.
#[derive(Clone, Debug)]
pub struct Drift {
    pub(crate) potential: RadialPotential,
    pub(crate) weight: Weight,
    pub(crate) n: u32,
}

impl Drift {
    fn guard(r: f64) -> Result<()> {
        if r > 0.0 {
            Ok(())
        } else {
            Err(Error::DomainError(format!("drift needs r > 0, got {r}")))
        }
    }

    pub fn value(&self, r: f64) -> Result<f64> {
        Self::guard(r)?;
        let nm1 = f64::from(self.n - 1);
        Ok(self.weight.ds2(r) - self.weight.s2(r) * (self.potential.derivative(r) - nm1 / r))
    }

    /// b'(r), needed by the Chen-type functional and the weighted integrated criterion.
    pub fn derivative(&self, r: f64) -> Result<f64> {
        Self::guard(r)?;
        let nm1 = f64::from(self.n - 1);
        let w = &self.weight;
        let p = &self.potential;
        Ok(w.d2s2(r)
            - w.ds2(r) * (p.derivative(r) - nm1 / r)
            - w.s2(r) * (p.second_derivative(r) + nm1 / (r * r)))
    }
}
