use std::fmt;
use std::sync::Arc;

use super::{check_derivative, ScalarFn};
use crate::error::{Error, Result};

const CONVEXITY_SLACK: f64 = 1e-10;

/// Radial potential V with analytic first and second derivatives on (0, R).
#[derive(Clone)]
pub struct RadialPotential {
    v: ScalarFn,
    dv: ScalarFn,
    d2v: ScalarFn,
    domain_end: f64,
    convex: bool,
}

impl fmt::Debug for RadialPotential {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("RadialPotential")
            .field("domain_end", &self.domain_end)
            .field("convex", &self.convex)
            .finish_non_exhaustive()
    }
}

impl RadialPotential {
    /// `domain_end` is R; pass `f64::INFINITY` for potentials on the whole half-line.
    pub fn new<V, D1, D2>(v: V, dv: D1, d2v: D2, domain_end: f64) -> Self
    where
        V: Fn(f64) -> f64 + Send + Sync + 'static,
        D1: Fn(f64) -> f64 + Send + Sync + 'static,
        D2: Fn(f64) -> f64 + Send + Sync + 'static,
    {
        RadialPotential {
            v: Arc::new(v),
            dv: Arc::new(dv),
            d2v: Arc::new(d2v),
            domain_end,
            convex: false,
        }
    }

    /// Claim convexity of V; checked by [`RadialPotential::check`].
    pub fn with_convex(mut self, convex: bool) -> Self {
        self.convex = convex;
        self
    }

    pub fn value(&self, r: f64) -> f64 {
        (self.v)(r)
    }

    pub fn derivative(&self, r: f64) -> f64 {
        (self.dv)(r)
    }

    pub fn second_derivative(&self, r: f64) -> f64 {
        (self.d2v)(r)
    }

    pub fn domain_end(&self) -> f64 {
        self.domain_end
    }

    pub fn is_bounded(&self) -> bool {
        self.domain_end.is_finite()
    }

    pub fn is_convex(&self) -> bool {
        self.convex
    }

    /// Finiteness, convexity claim and derivative consistency on `grid`.
    pub fn check(&self, grid: &[f64]) -> Result<()> {
        for &r in grid {
            let vals = [self.value(r), self.derivative(r), self.second_derivative(r)];
            if vals.iter().any(|x| !x.is_finite()) {
                return Err(Error::DomainError(format!("potential not finite at r = {r:e}")));
            }
            if self.convex && vals[2] < -CONVEXITY_SLACK {
                return Err(Error::InvalidInput(format!(
                    "potential flagged convex but V''({r:e}) = {:e}",
                    vals[2]
                )));
            }
        }
        check_derivative("V", &self.v, &self.dv, grid)?;
        check_derivative("V'", &self.dv, &self.d2v, grid)
    }
}

/// U(r) = V(r) - (n-1) ln r and its derivatives.
#[derive(Clone, Debug)]
pub struct EffectivePotential {
    pub(crate) potential: RadialPotential,
    pub(crate) n: u32,
}

impl EffectivePotential {
    fn guard(r: f64) -> Result<()> {
        if r > 0.0 {
            Ok(())
        } else {
            Err(Error::DomainError(format!("effective potential needs r > 0, got {r}")))
        }
    }

    fn nm1(&self) -> f64 {
        f64::from(self.n - 1)
    }

    pub fn value(&self, r: f64) -> Result<f64> {
        Self::guard(r)?;
        Ok(self.potential.value(r) - self.nm1() * r.ln())
    }

    pub fn derivative(&self, r: f64) -> Result<f64> {
        Self::guard(r)?;
        Ok(self.potential.derivative(r) - self.nm1() / r)
    }

    pub fn second_derivative(&self, r: f64) -> Result<f64> {
        Self::guard(r)?;
        Ok(self.potential.second_derivative(r) + self.nm1() / (r * r))
    }
}
