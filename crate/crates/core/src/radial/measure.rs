use std::fmt;

use super::{diagnostic_grid, Drift, EffectivePotential, RadialPotential, Weight};
use crate::error::{Error, Result};
use crate::interp::MonotoneCubic;
use crate::quadrature::{integrate, integrate_radial, Tolerance, RADIUS_CAP};

/// Tail integrands must decay at least like r^-(1 + MIN_TAIL_EXCESS).
const MIN_TAIL_EXCESS: f64 = 0.1;

/// Computational coordinate t used for tabulation and discretization.
///
/// Bounded supports and light (faster than any power) tails use t = r.
/// Power-law tails use r = scale·sinh(t), which is linear near the origin and
/// logarithmic in the tail, so they become exponentially decaying in t.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Coordinate {
    Linear,
    Asinh { scale: f64 },
}

impl Coordinate {
    pub fn to_radius(&self, t: f64) -> f64 {
        match *self {
            Coordinate::Linear => t,
            Coordinate::Asinh { scale } => scale * t.sinh(),
        }
    }

    pub fn from_radius(&self, r: f64) -> f64 {
        match *self {
            Coordinate::Linear => r,
            Coordinate::Asinh { scale } => (r / scale).asinh(),
        }
    }

    /// dr/dt.
    pub fn jacobian(&self, t: f64) -> f64 {
        match *self {
            Coordinate::Linear => 1.0,
            Coordinate::Asinh { scale } => scale * t.cosh(),
        }
    }

    /// ln(dr/dt), stable for large t.
    pub fn ln_jacobian(&self, t: f64) -> f64 {
        match *self {
            Coordinate::Linear => 0.0,
            Coordinate::Asinh { scale } => {
                scale.ln() + t + (-2.0 * t).exp().ln_1p() - std::f64::consts::LN_2
            }
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct MeasureOptions {
    /// Tail mass allowed beyond the truncation radius.
    pub tail_tol: f64,
    /// Radius at which tails are probed for integrability.
    pub horizon: f64,
    /// Number of nodes of the tabulated CDF.
    pub cdf_points: usize,
}

impl Default for MeasureOptions {
    fn default() -> Self {
        MeasureOptions { tail_tol: 1e-12, horizon: 1e8, cdf_points: 4096 }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum WeightedKind {
    /// ∫ r²/σ² dν
    R2OverS2,
    /// ∫ σ² dν
    S2,
}

/// Radial law ν(dr) ∝ r^(n-1) e^(-V(r)) dr on (0, R).
#[derive(Clone)]
pub struct RadialMeasure {
    n: u32,
    potential: RadialPotential,
    ln_norm: f64,
    scale: f64,
    r_max: f64,
    options: MeasureOptions,
    coordinate: Coordinate,
    cdf: MonotoneCubic,
}

impl fmt::Debug for RadialMeasure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("RadialMeasure")
            .field("n", &self.n)
            .field("ln_norm", &self.ln_norm)
            .field("scale", &self.scale)
            .field("r_max", &self.r_max)
            .field("coordinate", &self.coordinate)
            .finish_non_exhaustive()
    }
}

fn quad_tol() -> Tolerance {
    Tolerance { rel: 1e-13, abs: 0.0, max_segments: 4000 }
}

impl RadialMeasure {
    /// Build with default options and the given tail tolerance.
    pub fn new(n: u32, potential: RadialPotential, tail_tol: f64) -> Result<Self> {
        Self::with_options(n, potential, MeasureOptions { tail_tol, ..MeasureOptions::default() })
    }

    pub fn with_options(n: u32, potential: RadialPotential, options: MeasureOptions) -> Result<Self> {
        if n < 2 {
            return Err(Error::InvalidInput(format!("dimension must be >= 2, got {n}")));
        }
        if !(options.tail_tol > 0.0 && options.tail_tol < 1e-3) {
            return Err(Error::InvalidInput(format!(
                "tail tolerance must lie in (0, 1e-3), got {}",
                options.tail_tol
            )));
        }
        if options.cdf_points < 16 {
            return Err(Error::InvalidInput("CDF table needs at least 16 points".into()));
        }
        let end = potential.domain_end();
        if !(end > 0.0) {
            return Err(Error::InvalidInput(format!("domain end must be positive, got {end}")));
        }
        let nm1 = f64::from(n - 1);
        let ln_w = |r: f64| nm1 * r.ln() - potential.value(r);

        // locate the mode of r^(n-1) e^(-V) on a log scan
        let (lo, hi) = if end.is_finite() { (end * 1e-8, end) } else { (1e-6, 1e12) };
        let mut best = (f64::NEG_INFINITY, lo);
        let steps = 400;
        for i in 0..=steps {
            let r = (lo.ln() + (hi.ln() - lo.ln()) * i as f64 / steps as f64).exp();
            let v = ln_w(r);
            if v.is_nan() {
                return Err(Error::DomainError(format!("log-density is NaN at r = {r:e}")));
            }
            if v > best.0 {
                best = (v, r);
            }
        }
        let (ln_peak, scale) = best;
        if !ln_peak.is_finite() {
            return Err(Error::DomainError("log-density has no finite maximum".into()));
        }

        if !end.is_finite() {
            probe_tail("density", &ln_w, options.horizon)?;
        }

        let diag_hi = if end.is_finite() { end * (1.0 - 1e-3) } else { (scale * 1e4).min(options.horizon) };
        potential.check(&diagnostic_grid(scale * 1e-4, diag_hi, 64))?;

        let scaled = |r: f64| (ln_w(r) - ln_peak).exp();
        let z = integrate_radial(&scaled, 0.0, end, scale, quad_tol())?.value;
        if !(z > 0.0) || !z.is_finite() {
            return Err(Error::NonIntegrable(format!("normalization is {z:e}")));
        }
        let ln_norm = ln_peak + z.ln();

        let mut measure = RadialMeasure {
            n,
            potential,
            ln_norm,
            scale,
            r_max: end,
            options,
            coordinate: Coordinate::Linear,
            // placeholder until the truncation radius is known
            cdf: MonotoneCubic::new(vec![0.0, 1.0], vec![0.0, 0.0], None)?,
        };
        if !end.is_finite() {
            measure.r_max = measure.truncation_radius(options.tail_tol)?;
            if !measure.has_light_tail() {
                measure.coordinate = Coordinate::Asinh { scale };
            }
        }
        measure.cdf = measure.tabulate_cdf()?;
        Ok(measure)
    }

    /// Smallest radius (to 0.1%) whose tail mass is below `tol`.
    pub fn truncation_radius(&self, tol: f64) -> Result<f64> {
        if self.domain_end().is_finite() {
            return Ok(self.domain_end());
        }
        let mut hi = self.scale;
        while self.tail_mass(hi) >= tol {
            hi *= 2.0;
            if hi > RADIUS_CAP {
                return Err(Error::NonIntegrable(format!(
                    "tail mass exceeds {tol:e} beyond r = {RADIUS_CAP:e}"
                )));
            }
        }
        let mut lo = hi / 2.0;
        if self.tail_mass(lo) < tol {
            return Ok(lo);
        }
        // relative resolution of 1e-3 in the truncation radius
        while hi / lo > 1.001 {
            let mid = (lo * hi).sqrt();
            if self.tail_mass(mid) < tol {
                hi = mid;
            } else {
                lo = mid;
            }
        }
        Ok(hi)
    }

    /// d ln(r^(n-1) e^(-V)) / d ln r.
    fn log_slope(&self, r: f64) -> f64 {
        f64::from(self.n - 1) - r * self.potential.derivative(r)
    }

    /// Tail decays faster than any power: the log-log slope keeps steepening
    /// past the truncation radius.
    fn has_light_tail(&self) -> bool {
        let s1 = self.log_slope(self.r_max);
        let s2 = self.log_slope(10.0 * self.r_max);
        s1 < 0.0 && s2 < 2.0 * s1
    }

    /// Largest radius the eigensolver window may reach: the radius cap for
    /// power-law tails, otherwise the first doubling of the truncation radius
    /// where the density underflows.
    pub fn window_cap(&self) -> f64 {
        if self.domain_end().is_finite() {
            return self.domain_end();
        }
        if let Coordinate::Asinh { .. } = self.coordinate {
            return RADIUS_CAP;
        }
        let mut r = self.r_max;
        while r < RADIUS_CAP && self.ln_weight(r) - self.ln_norm > -750.0 {
            r *= 2.0;
        }
        r.min(RADIUS_CAP)
    }

    fn tabulate_cdf(&self) -> Result<MonotoneCubic> {
        let m = self.options.cdf_points;
        let t_max = self.coordinate.from_radius(self.r_max);
        let nodes: Vec<f64> = (0..m)
            .map(|k| {
                let x = 0.5 * (1.0 - (std::f64::consts::PI * k as f64 / (m - 1) as f64).cos());
                t_max * x
            })
            .collect();
        let dens_t = |t: f64| {
            if t <= 0.0 {
                return 0.0;
            }
            let r = self.coordinate.to_radius(t);
            (self.ln_weight(r) - self.ln_norm + self.coordinate.ln_jacobian(t)).exp()
        };
        let mut values = Vec::with_capacity(m);
        let mut slopes = Vec::with_capacity(m);
        let mut acc = 0.0;
        values.push(0.0);
        slopes.push(dens_t(0.0));
        let tol = Tolerance { rel: 1e-12, abs: 1e-18, max_segments: 200 };
        for w in nodes.windows(2) {
            acc += integrate(&dens_t, w[0], w[1], tol)?.value;
            values.push(acc);
            slopes.push(dens_t(w[1]));
        }
        MonotoneCubic::new(nodes, values, Some(slopes))
    }

    pub fn dimension(&self) -> u32 {
        self.n
    }

    pub fn potential(&self) -> &RadialPotential {
        &self.potential
    }

    pub fn domain_end(&self) -> f64 {
        self.potential.domain_end()
    }

    /// Truncation radius: R itself for bounded supports.
    pub fn r_max(&self) -> f64 {
        self.r_max
    }

    pub fn tail_tol(&self) -> f64 {
        self.options.tail_tol
    }

    pub fn options(&self) -> MeasureOptions {
        self.options
    }

    /// Mode of the radial density; used as a characteristic length.
    pub fn scale(&self) -> f64 {
        self.scale
    }

    pub fn coordinate(&self) -> Coordinate {
        self.coordinate
    }

    /// ln Z with Z = ∫_0^R r^(n-1) e^(-V(r)) dr.
    pub fn ln_normalization(&self) -> f64 {
        self.ln_norm
    }

    pub fn normalization(&self) -> f64 {
        self.ln_norm.exp()
    }

    /// Unnormalized log-density (n-1) ln r - V(r).
    pub fn ln_weight(&self, r: f64) -> f64 {
        f64::from(self.n - 1) * r.ln() - self.potential.value(r)
    }

    /// Probability density of ν at r.
    pub fn density(&self, r: f64) -> f64 {
        if r <= 0.0 || r >= self.domain_end() {
            return 0.0;
        }
        (self.ln_weight(r) - self.ln_norm).exp()
    }

    /// Radii for hypothesis checks, log-spaced over the bulk of the measure.
    pub fn diagnostic_grid(&self, count: usize) -> Vec<f64> {
        let hi = if self.domain_end().is_finite() {
            self.domain_end() * (1.0 - 1e-3)
        } else {
            self.r_max
        };
        diagnostic_grid(self.scale * 1e-4, hi, count)
    }

    /// ∫ g dν over the full support, after checking the tail for integrability.
    pub fn expect<G: Fn(f64) -> f64>(&self, g: G) -> Result<f64> {
        if !self.domain_end().is_finite() {
            let ln_integrand = |r: f64| g(r).abs().ln() + self.ln_weight(r);
            probe_tail("integrand", &ln_integrand, self.options.horizon)?;
        }
        let integrand = |r: f64| {
            let d = self.density(r);
            if d == 0.0 {
                0.0
            } else {
                g(r) * d
            }
        };
        Ok(integrate_radial(&integrand, 0.0, self.domain_end(), self.scale, quad_tol())?.value)
    }

    /// ∫ g dν over (0, min(end, R)) without tail checks.
    pub fn expect_below<G: Fn(f64) -> f64>(&self, g: G, end: f64) -> Result<f64> {
        let integrand = |r: f64| {
            let d = self.density(r);
            if d == 0.0 {
                0.0
            } else {
                g(r) * d
            }
        };
        Ok(integrate_radial(&integrand, 0.0, end.min(self.domain_end()), self.scale, quad_tol())?.value)
    }

    /// ∫ r^k dν.
    pub fn moment(&self, k: u32) -> Result<f64> {
        self.expect(|r| r.powi(k as i32))
    }

    pub fn weighted_moment(&self, weight: &Weight, kind: WeightedKind) -> Result<f64> {
        match kind {
            WeightedKind::R2OverS2 => self.expect(|r| r * r / weight.s2(r)),
            WeightedKind::S2 => self.expect(|r| weight.s2(r)),
        }
    }

    /// ν((r, R)).
    pub fn tail_mass(&self, r: f64) -> f64 {
        let end = self.domain_end();
        if r <= 0.0 {
            return 1.0;
        }
        if r >= end {
            return 0.0;
        }
        let d = |x: f64| self.density(x);
        let tol = Tolerance { rel: 1e-12, abs: 0.0, max_segments: 4000 };
        match integrate_radial(&d, r, end, self.scale.max(r), tol) {
            Ok(q) => q.value.clamp(0.0, 1.0),
            Err(_) => f64::NAN,
        }
    }

    /// Tabulated cumulative distribution function.
    pub fn cdf(&self, r: f64) -> f64 {
        if r <= 0.0 {
            return 0.0;
        }
        if r >= self.r_max {
            return 1.0 - self.tail_mass(r);
        }
        self.cdf.eval(self.coordinate.from_radius(r))
    }

    /// Inverse of the tabulated CDF; u beyond the table maps to r_max.
    pub fn quantile(&self, u: f64) -> f64 {
        let t = self.cdf.inverse(u);
        self.coordinate.to_radius(t).min(self.r_max)
    }

    /// Nodes of the CDF table as (radius, cdf) pairs.
    pub fn cdf_table(&self) -> Vec<(f64, f64)> {
        self.cdf
            .nodes()
            .iter()
            .zip(self.cdf.values())
            .map(|(&t, &f)| (self.coordinate.to_radius(t), f))
            .collect()
    }

    pub fn effective_potential(&self) -> EffectivePotential {
        EffectivePotential { potential: self.potential.clone(), n: self.n }
    }

    pub fn drift(&self, weight: &Weight) -> Drift {
        Drift { potential: self.potential.clone(), weight: weight.clone(), n: self.n }
    }
}

/// Reject integrands whose log-log slope at the horizon is not below -(1 + excess).
fn probe_tail<F: Fn(f64) -> f64>(what: &str, ln_f: &F, horizon: f64) -> Result<()> {
    let h = horizon.min(RADIUS_CAP / 10.0);
    let (a, b) = (ln_f(h), ln_f(10.0 * h));
    if a.is_nan() || b.is_nan() {
        return Err(Error::DomainError(format!("{what} is NaN near r = {h:e}")));
    }
    if b == f64::NEG_INFINITY {
        return Ok(());
    }
    let slope = (b - a) / std::f64::consts::LN_10;
    if !(slope < -1.0 - MIN_TAIL_EXCESS) {
        return Err(Error::NonIntegrable(format!(
            "{what} decays like r^{slope:.3} near r = {h:e}"
        )));
    }
    Ok(())
}
