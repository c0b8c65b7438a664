//! Closed-form spectral-gap bounds for radial measures and the brackets
//! they combine into.

use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::bracket::{BoundBracket, Provenance};
use crate::eigen::GridSpec;
use crate::error::{Error, Result};
use crate::quadrature::RADIUS_CAP;
use crate::radial::{RadialMeasure, ScalarFn, Weight};
use crate::special::ln_gamma;

pub use crate::special::{gamma_ratio_bounds, GammaRatioBounds};

/// An increasing test function with three derivatives.
#[derive(Clone)]
pub struct CandidateFunction {
    f: ScalarFn,
    df: ScalarFn,
    d2f: ScalarFn,
    d3f: ScalarFn,
    monotone: bool,
    label: String,
}

impl fmt::Debug for CandidateFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("CandidateFunction")
            .field("label", &self.label)
            .field("monotone", &self.monotone)
            .finish_non_exhaustive()
    }
}

impl CandidateFunction {
    pub fn new<A, B, C, D>(label: &str, f: A, df: B, d2f: C, d3f: D) -> Self
    where
        A: Fn(f64) -> f64 + Send + Sync + 'static,
        B: Fn(f64) -> f64 + Send + Sync + 'static,
        C: Fn(f64) -> f64 + Send + Sync + 'static,
        D: Fn(f64) -> f64 + Send + Sync + 'static,
    {
        CandidateFunction {
            f: Arc::new(f),
            df: Arc::new(df),
            d2f: Arc::new(d2f),
            d3f: Arc::new(d3f),
            monotone: true,
            label: label.to_string(),
        }
    }

    pub fn with_monotone(mut self, monotone: bool) -> Self {
        self.monotone = monotone;
        self
    }

    /// f(r) = r.
    pub fn linear() -> Self {
        Self::new("r", |r| r, |_| 1.0, |_| 0.0, |_| 0.0)
    }

    /// f(r) = r^p for p > 0.
    pub fn power(p: f64) -> Self {
        Self::new(
            &format!("r^{p}"),
            move |r: f64| r.powf(p),
            move |r: f64| p * r.powf(p - 1.0),
            move |r: f64| p * (p - 1.0) * r.powf(p - 2.0),
            move |r: f64| p * (p - 1.0) * (p - 2.0) * r.powf(p - 3.0),
        )
    }

    /// f(r) = r² - c.
    pub fn shifted_square(c: f64) -> Self {
        Self::new(&format!("r^2 - {c}"), move |r| r * r - c, |r| 2.0 * r, |_| 2.0, |_| 0.0)
    }

    /// f(r) = (1 + r²)^e.
    pub fn one_plus_square_power(e: f64) -> Self {
        // with q = 1 + r², powers of q are kept as high as possible so that
        // far-tail derivatives do not underflow
        Self::new(
            &format!("(1+r^2)^{e}"),
            move |r: f64| (e * (r * r).ln_1p()).exp(),
            move |r: f64| 2.0 * e * r * ((e - 1.0) * (r * r).ln_1p()).exp(),
            move |r: f64| {
                let s = r * r / (1.0 + r * r);
                2.0 * e * ((e - 1.0) * (r * r).ln_1p()).exp() * (1.0 + 2.0 * (e - 1.0) * s)
            },
            move |r: f64| {
                let s = r * r / (1.0 + r * r);
                4.0 * e * (e - 1.0) * r * ((e - 2.0) * (r * r).ln_1p()).exp() * (3.0 + 2.0 * (e - 2.0) * s)
            },
        )
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn is_monotone(&self) -> bool {
        self.monotone
    }

    pub fn f(&self, r: f64) -> f64 {
        (self.f)(r)
    }
    pub fn df(&self, r: f64) -> f64 {
        (self.df)(r)
    }
    pub fn d2f(&self, r: f64) -> f64 {
        (self.d2f)(r)
    }
    pub fn d3f(&self, r: f64) -> f64 {
        (self.d3f)(r)
    }

    /// Monotonicity claim and derivative self-checks on `grid`.
    pub fn check(&self, grid: &[f64]) -> Result<()> {
        if self.monotone {
            if let Some(&r) = grid.iter().find(|&&r| !(self.df(r) > 0.0)) {
                return Err(Error::HypothesisFailed(format!(
                    "f' = {:e} is not positive at r = {r:e}",
                    self.df(r)
                )));
            }
        }
        crate::radial::check_derivative("f", &self.f, &self.df, grid)?;
        crate::radial::check_derivative("f'", &self.df, &self.d2f, grid)?;
        crate::radial::check_derivative("f''", &self.d2f, &self.d3f, grid)
    }
}

/// Whether a lower bound carries information.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum BoundStatus {
    Informative,
    /// The criterion gives nothing; the reported value is 0.
    NonInformative,
    /// Infimum over a finite grid rather than over the whole half-line.
    GridInfimum,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LowerBound {
    pub value: f64,
    pub status: BoundStatus,
    /// Radius where a grid infimum was attained.
    pub argmin: Option<f64>,
}

impl LowerBound {
    fn informative(value: f64) -> Self {
        LowerBound { value, status: BoundStatus::Informative, argmin: None }
    }

    fn none() -> Self {
        LowerBound { value: 0.0, status: BoundStatus::NonInformative, argmin: None }
    }
}

fn check_dimension(n: u32) -> Result<()> {
    if n < 2 {
        return Err(Error::InvalidInput(format!("dimension must be >= 2, got {n}")));
    }
    Ok(())
}

fn check_positive(name: &str, x: f64) -> Result<()> {
    if !(x > 0.0 && x.is_finite()) {
        return Err(Error::InvalidInput(format!("{name} must be positive and finite, got {x}")));
    }
    Ok(())
}

/// [(n-1)/m2, n/m2] for a spherically symmetric log-concave law with second moment m2.
pub fn main_theorem_bracket(n: u32, m2: f64) -> Result<BoundBracket> {
    check_dimension(n)?;
    check_positive("second moment", m2)?;
    let n = f64::from(n);
    BoundBracket::new((n - 1.0) / m2, n / m2, Provenance::MainTheoremLower, Provenance::MainTheoremUpper)
}

/// 1/∫(1/U'')dν with U = V - (n-1) ln r.
pub fn bj_lower(measure: &RadialMeasure) -> Result<LowerBound> {
    let u = measure.effective_potential();
    for r in measure.diagnostic_grid(400) {
        let c = u.second_derivative(r)?;
        if !(c > 0.0) {
            return Err(Error::HypothesisFailed(format!("U''({r:e}) = {c:e} is not positive")));
        }
    }
    let integral = measure.expect(|r| 1.0 / u.second_derivative(r).unwrap_or(f64::NAN));
    match integral {
        Ok(v) if v > 0.0 && v.is_finite() => Ok(LowerBound::informative(1.0 / v)),
        Ok(_) | Err(Error::NonIntegrable(_)) => Ok(LowerBound::none()),
        Err(e) => Err(e),
    }
}

/// (n-1)/∫r²dν.
pub fn bj_radial_lower(measure: &RadialMeasure) -> Result<f64> {
    let m2 = measure.moment(2)?;
    Ok(f64::from(measure.dimension() - 1) / m2)
}

/// V_f = -(L f)'/f' for the weighted radial generator L = σ² d² + b d.
pub fn chen_functional(measure: &RadialMeasure, weight: &Weight, f: &CandidateFunction, r: f64) -> Result<f64> {
    if !(r > 0.0) {
        return Err(Error::DomainError(format!("V_f needs r > 0, got {r}")));
    }
    let p = measure.potential();
    let nm1 = f64::from(measure.dimension() - 1);
    let (s2, ds2) = (weight.s2(r), weight.ds2(r));
    let (d1, d2, d3) = (f.df(r), f.d2f(r), f.d3f(r));
    // drift without its (n-1)/r part, which is grouped so it cancels near 0
    let b0 = ds2 - s2 * p.derivative(r);
    let db0 = weight.d2s2(r) - ds2 * p.derivative(r) - s2 * p.second_derivative(r);
    let radial = nm1 * (s2 * (d2 - d1 / r) / r + ds2 * d1 / r);
    Ok(-(ds2 * d2 + s2 * d3 + db0 * d1 + b0 * d2 + radial) / d1)
}

/// Grid infimum of V_f, refined by golden-section search around the minimizer.
pub fn chen_lower(
    measure: &RadialMeasure,
    weight: &Weight,
    f: &CandidateFunction,
    grid: &GridSpec,
) -> Result<LowerBound> {
    let r_max = grid.r_max_override.unwrap_or(measure.r_max()).min(measure.domain_end());
    let count = 10 * grid.n_cells;
    let (a, b) = ((r_max * 1e-6).ln(), r_max.ln());
    let radii: Vec<f64> = (0..count).map(|i| (a + (b - a) * i as f64 / (count - 1) as f64).exp()).collect();
    let mut values = Vec::with_capacity(count);
    for &r in &radii {
        if !(f.df(r) > 0.0) {
            return Err(Error::HypothesisFailed(format!("f' is not positive at r = {r:e}")));
        }
        let v = chen_functional(measure, weight, f, r)?;
        if v.is_nan() {
            return Err(Error::DomainError(format!("V_f is NaN at r = {r:e}")));
        }
        values.push(v);
    }
    let k = (0..count).min_by(|&i, &j| values[i].total_cmp(&values[j])).unwrap_or(0);
    let (mut lo, mut hi) = (radii[k.saturating_sub(1)].ln(), radii[(k + 1).min(count - 1)].ln());
    let eval = |x: f64| chen_functional(measure, weight, f, x.exp()).unwrap_or(f64::INFINITY);
    let mut best = (values[k], radii[k]);
    let phi = 0.5 * (5f64.sqrt() - 1.0);
    let mut x1 = hi - phi * (hi - lo);
    let mut x2 = lo + phi * (hi - lo);
    let (mut f1, mut f2) = (eval(x1), eval(x2));
    for _ in 0..80 {
        if f1 < f2 {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - phi * (hi - lo);
            f1 = eval(x1);
        } else {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + phi * (hi - lo);
            f2 = eval(x2);
        }
    }
    for (v, x) in [(f1, x1), (f2, x2)] {
        if v < best.0 {
            best = (v, x.exp());
        }
    }
    if !(best.0 > 0.0) {
        return Ok(LowerBound { argmin: Some(best.1), ..LowerBound::none() });
    }
    Ok(LowerBound { value: best.0, status: BoundStatus::GridInfimum, argmin: Some(best.1) })
}

/// 𝒱 = (σ²σ'' + bσ')/σ - b'.
pub fn weighted_curvature(measure: &RadialMeasure, weight: &Weight, r: f64) -> Result<f64> {
    Ok(curvature_terms(measure, weight, r)?.0)
}

/// 𝒱 together with the size of the terms it is assembled from.
fn curvature_terms(measure: &RadialMeasure, weight: &Weight, r: f64) -> Result<(f64, f64)> {
    let drift = measure.drift(weight);
    let a = weight.s2(r) * weight.d2s(r) / weight.s(r);
    let b = drift.value(r)? * weight.ds(r) / weight.s(r);
    let c = drift.derivative(r)?;
    Ok((a + b - c, a.abs() + b.abs() + c.abs()))
}

/// 1/∫(1/𝒱)dν.
///
/// On unbounded supports 𝒱 may decay while its terms do not; the integral is
/// cut where 𝒱 can no longer be resolved against them, which lies far beyond
/// the truncation radius of the measure.
pub fn bj_weighted_lower(measure: &RadialMeasure, weight: &Weight) -> Result<LowerBound> {
    for r in measure.diagnostic_grid(400) {
        let c = weighted_curvature(measure, weight, r)?;
        if !(c > 0.0) {
            return Err(Error::HypothesisFailed(format!("weighted curvature {c:e} at r = {r:e} is not positive")));
        }
    }
    let inv = |r: f64| 1.0 / weighted_curvature(measure, weight, r).unwrap_or(f64::NAN);
    let resolved = |r: f64| curvature_terms(measure, weight, r).is_ok_and(|(v, size)| v > 1e-8 * size);
    let mut cut = f64::INFINITY;
    if !measure.domain_end().is_finite() {
        let mut r = measure.r_max();
        while r < RADIUS_CAP / 2.0 && resolved(2.0 * r) {
            r *= 2.0;
        }
        if r < RADIUS_CAP / 2.0 {
            cut = r;
        }
    }
    let integral = if cut.is_finite() {
        // integrability from the log-log slope of the integrand below the cut
        let ln_g = |r: f64| inv(r).ln() + measure.ln_weight(r);
        let slope = (ln_g(cut) - ln_g(cut / 10.0)) / std::f64::consts::LN_10;
        if slope < -1.1 {
            measure.expect_below(inv, cut)
        } else {
            Err(Error::NonIntegrable(format!("1/𝒱 dν decays like r^{slope:.3}")))
        }
    } else {
        measure.expect(inv)
    };
    match integral {
        Ok(v) if v > 0.0 && v.is_finite() => Ok(LowerBound::informative(1.0 / v)),
        Ok(_) | Err(Error::NonIntegrable(_)) => Ok(LowerBound::none()),
        Err(e) => Err(e),
    }
}

/// [min{λ_ν, (n-1)/m2}, min{λ_ν, n/m2}].
pub fn spectral_comparison(lambda_nu: f64, n: u32, m2: f64) -> Result<BoundBracket> {
    check_dimension(n)?;
    check_positive("second moment", m2)?;
    if !(lambda_nu >= 0.0) {
        return Err(Error::InvalidInput(format!("radial gap must be >= 0, got {lambda_nu}")));
    }
    let n = f64::from(n);
    let pick = |a: f64, b: f64, src: Provenance| if a <= b { (a, Provenance::Eigensolver) } else { (b, src) };
    let (lo, ls) = pick(lambda_nu, (n - 1.0) / m2, Provenance::SpectralComparisonLower);
    let (hi, hs) = pick(lambda_nu, n / m2, Provenance::SpectralComparisonUpper);
    BoundBracket::new(lo, hi.max(lo), ls, hs)
}

/// [min{λ, (n-1)/∫(r²/σ²)dν}, min{λ, n∫σ²dν/∫r²dν}].
pub fn weighted_comparison(lambda: f64, n: u32, m_r2_over_s2: f64, m_s2: f64, m2: f64) -> Result<BoundBracket> {
    check_dimension(n)?;
    check_positive("∫r²/σ² dν", m_r2_over_s2)?;
    check_positive("∫σ² dν", m_s2)?;
    check_positive("second moment", m2)?;
    if !(lambda >= 0.0) {
        return Err(Error::InvalidInput(format!("radial gap must be >= 0, got {lambda}")));
    }
    let n = f64::from(n);
    let pick = |a: f64, b: f64, src: Provenance| if a <= b { (a, Provenance::Eigensolver) } else { (b, src) };
    let (lo, ls) = pick(lambda, (n - 1.0) / m_r2_over_s2, Provenance::WeightedComparisonLower);
    let (hi, hs) = pick(lambda, n * m_s2 / m2, Provenance::WeightedComparisonUpper);
    BoundBracket::new(lo, hi.max(lo), ls, hs)
}

/// ∫σ²f'²dν / Var_ν(f).
pub fn rayleigh_upper(measure: &RadialMeasure, weight: &Weight, f: &CandidateFunction) -> Result<f64> {
    let mean = measure.expect(|r| f.f(r))?;
    let var = measure.expect(|r| (f.f(r) - mean).powi(2))?;
    if !(var >= 1e-14) {
        return Err(Error::DegenerateFunction(format!("variance {var:e} below 1e-14")));
    }
    let energy = measure.expect(|r| weight.s2(r) * f.df(r).powi(2))?;
    Ok(energy / var)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ExpPowerBrackets {
    /// Bracket from the exact second moment.
    pub exact: BoundBracket,
    /// Bracket from log-convexity of Γ.
    pub simplified: BoundBracket,
    /// n^(1-2/α).
    pub order: f64,
}

/// Second moment α^(2/α) Γ((n+2)/α)/Γ(n/α) of the law ∝ exp(-‖x‖^α/α).
pub fn exp_power_second_moment(n: u32, alpha: f64) -> f64 {
    let n = f64::from(n);
    ((2.0 / alpha) * alpha.ln() + ln_gamma((n + 2.0) / alpha) - ln_gamma(n / alpha)).exp()
}

pub fn exp_power_explicit(n: u32, alpha: f64) -> Result<ExpPowerBrackets> {
    check_dimension(n)?;
    if !(alpha >= 1.0 && alpha.is_finite()) {
        return Err(Error::InvalidInput(format!("alpha must be >= 1, got {alpha}")));
    }
    let exact = main_theorem_bracket(n, exp_power_second_moment(n, alpha))?;
    let exact = BoundBracket {
        lower_source: Provenance::ExpPowerGammaRatio,
        upper_source: Provenance::ExpPowerGammaRatio,
        ..exact
    };
    let nf = f64::from(n);
    let order = nf.powf(1.0 - 2.0 / alpha);
    let simplified = BoundBracket::new(
        (nf - 1.0) / (nf + 1.0) * order,
        (nf + 2.0) / nf * order,
        Provenance::ExpPowerSimplified,
        Provenance::ExpPowerSimplified,
    )?;
    // the simplified bracket is implied by the exact one
    let slack = 1e-12 * (1.0 + order);
    if !simplified.encloses(&exact, slack) {
        return Err(Error::HypothesisFailed(format!(
            "simplified bracket [{}, {}] does not enclose [{}, {}]",
            simplified.lower, simplified.upper, exact.lower, exact.upper
        )));
    }
    Ok(ExpPowerBrackets { exact, simplified, order })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn main_theorem_examples() {
        let b = main_theorem_bracket(3, 3.0).unwrap();
        assert!((b.lower - 2.0 / 3.0).abs() < 1e-15 && (b.upper - 1.0).abs() < 1e-15);
        let b = main_theorem_bracket(4, 2.0 / 3.0).unwrap();
        assert!((b.lower - 4.5).abs() < 1e-14 && (b.upper - 6.0).abs() < 1e-14);
        assert!(main_theorem_bracket(3, 0.0).is_err());
        assert!(main_theorem_bracket(1, 1.0).is_err());
    }

    #[test]
    fn comparisons() {
        let b = spectral_comparison(2.0, 3, 3.0).unwrap();
        assert!((b.lower - 2.0 / 3.0).abs() < 1e-15 && (b.upper - 1.0).abs() < 1e-15);
        let b = spectral_comparison(0.1, 3, 3.0).unwrap();
        assert_eq!((b.lower, b.upper), (0.1, 0.1));
        assert_eq!(b.lower_source, Provenance::Eigensolver);
        // Cauchy n = 3, β = 4 with σ² = 1 + r²: ∫r²/σ² = 3/8, ∫σ² = 2, ∫r² = 1
        let b = weighted_comparison(6.0, 3, 3.0 / 8.0, 2.0, 1.0).unwrap();
        assert!((b.lower - 16.0 / 3.0).abs() < 1e-14 && (b.upper - 6.0).abs() < 1e-14);
        assert!(weighted_comparison(1.0, 3, -1.0, 1.0, 1.0).is_err());
    }

    #[test]
    fn exp_power_brackets() {
        let b = exp_power_explicit(3, 1.0).unwrap();
        assert!((b.exact.lower - 1.0 / 6.0).abs() < 1e-14);
        assert!((b.exact.upper - 0.25).abs() < 1e-14);
        let b = exp_power_explicit(5, 2.0).unwrap();
        assert!((b.exact.lower - 0.8).abs() < 1e-14 && (b.exact.upper - 1.0).abs() < 1e-14);
        let b = exp_power_explicit(16, 4.0).unwrap();
        assert!((b.simplified.lower - 15.0 / 17.0 * 4.0).abs() < 1e-13);
        assert!((b.simplified.upper - 18.0 / 16.0 * 4.0).abs() < 1e-13);
        assert!(exp_power_explicit(3, 0.5).is_err());
    }

    #[test]
    fn candidate_derivatives_are_consistent() {
        let grid = crate::radial::diagnostic_grid(1e-2, 1e2, 40);
        CandidateFunction::one_plus_square_power(0.35).check(&grid).unwrap();
        CandidateFunction::power(1.5).check(&grid).unwrap();
        CandidateFunction::shifted_square(3.0).check(&grid).unwrap();
        let bad = CandidateFunction::new("bad", |r| -r, |_| -1.0, |_| 0.0, |_| 0.0);
        assert!(matches!(bad.check(&grid), Err(Error::HypothesisFailed(_))));
    }
}
