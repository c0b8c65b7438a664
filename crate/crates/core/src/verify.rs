//! Regression and bracketing suites run by the `verify` command.

use rayon::prelude::*;

use crate::analysis::{is_informative, radial_bounds, RAYLEIGH};
use crate::bounds::{chen_lower, exp_power_explicit, exp_power_second_moment, gamma_ratio_bounds, CandidateFunction};
use crate::catalog::{
    cauchy_radial_gap, catalog_grid, make_family_with, Family, FamilyModel, FamilySpec, WeightChoice,
};
use crate::eigen::{residual_check, spectral_gap, GridSpec};
use crate::error::Result;
use crate::radial::MeasureOptions;
use crate::report::CheckResult;
use crate::special::ln_gamma;

/// Settings shared by every suite.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct Settings {
    pub grid: GridSpec,
    pub options: MeasureOptions,
}

/// |measured - expected| <= rel·|expected|.
pub fn check_rel(name: String, measured: f64, expected: f64, rel: f64) -> CheckResult {
    let allowed = rel * expected.abs();
    let slack = allowed - (measured - expected).abs();
    CheckResult { name, passed: slack >= 0.0, measured, expected, slack, detail: Some(format!("relative tolerance {rel:e}")) }
}

/// |measured - expected| <= tol.
pub fn check_abs(name: String, measured: f64, expected: f64, tol: f64) -> CheckResult {
    let slack = tol - (measured - expected).abs();
    CheckResult { name, passed: slack >= 0.0, measured, expected, slack, detail: Some(format!("absolute tolerance {tol:e}")) }
}

/// measured <= bound + tol.
pub fn check_le(name: String, measured: f64, bound: f64, tol: f64) -> CheckResult {
    let slack = bound + tol - measured;
    CheckResult { name, passed: slack >= 0.0, measured, expected: bound, slack, detail: Some(format!("at most, tolerance {tol:e}")) }
}

/// measured >= bound - tol.
pub fn check_ge(name: String, measured: f64, bound: f64, tol: f64) -> CheckResult {
    let slack = measured - bound + tol;
    CheckResult { name, passed: slack >= 0.0, measured, expected: bound, slack, detail: Some(format!("at least, tolerance {tol:e}")) }
}

fn model(spec: &FamilySpec, s: &Settings) -> Result<FamilyModel> {
    make_family_with(spec, s.options)
}

fn solve(spec: &FamilySpec, s: &Settings) -> Result<(FamilyModel, f64)> {
    let m = model(spec, s)?;
    let gap = spectral_gap(&m.measure, &m.weight, &s.grid)?.value;
    Ok((m, gap))
}

fn flatten(parts: Vec<Result<Vec<CheckResult>>>) -> Result<Vec<CheckResult>> {
    let mut out = Vec::new();
    for p in parts {
        out.extend(p?);
    }
    Ok(out)
}

/// Cauchy dimensions and parameters covering both radial regimes.
pub fn cauchy_cases() -> Vec<FamilySpec> {
    catalog_grid().into_iter().filter(|s| matches!(s.family, Family::Cauchy { .. })).collect()
}

/// Solver against the closed-form Cauchy radial gap, plus the critical value
/// β = n/2 + 2 where both branches give 4.
pub fn cauchy_exact(s: &Settings) -> Result<Vec<CheckResult>> {
    let mut specs = cauchy_cases();
    for n in [2, 3, 4, 6] {
        specs.push(FamilySpec::cauchy(f64::from(n) / 2.0 + 2.0, n));
    }
    let parts = specs
        .par_iter()
        .map(|spec| {
            let Family::Cauchy { beta } = spec.family else { unreachable!() };
            let (_, gap) = solve(spec, s)?;
            let mut out = vec![check_rel(format!("{} radial gap", spec.describe()), gap, cauchy_radial_gap(beta, spec.n), 1e-3)];
            let kappa = beta - f64::from(spec.n) / 2.0;
            if kappa == 2.0 {
                out.push(check_rel(format!("{} continuity, low branch", spec.describe()), gap, kappa * kappa, 1e-3));
                out.push(check_rel(format!("{} continuity, high branch", spec.describe()), gap, 4.0 * (kappa - 1.0), 1e-3));
            }
            Ok(out)
        })
        .collect();
    flatten(parts)
}

/// Gaussian radial gap 2 for n = 2..8 and the residual of the eigenpair (r² - n, 2).
pub fn gaussian_radial(s: &Settings) -> Result<Vec<CheckResult>> {
    let parts = (2..=8u32)
        .into_par_iter()
        .map(|n| {
            let (m, gap) = solve(&FamilySpec::gaussian(n), s)?;
            let f = CandidateFunction::shifted_square(f64::from(n));
            let res = residual_check(&m.measure, &m.weight, &f, 2.0)?;
            Ok(vec![
                check_abs(format!("gaussian n={n} radial gap"), gap, 2.0, 2e-3),
                check_le(format!("gaussian n={n} residual of (r^2 - n, 2)"), res, 0.0, 1e-10),
            ])
        })
        .collect();
    flatten(parts)
}

/// Log-convexity inequalities for Γ on a grid and log-Gamma accuracy.
pub fn gamma_inequalities() -> Result<Vec<CheckResult>> {
    let mut out = Vec::new();
    for a in [0.25, 0.5, 1.0, 2.0, 5.0, 20.0, 100.0] {
        for k in 0..=8 {
            let b = 0.25 * f64::from(k);
            let g = gamma_ratio_bounds(a, b)?;
            out.push(CheckResult {
                name: format!("gamma ratio a={a} b={b}"),
                passed: g.slack() >= -1e-12,
                measured: g.value,
                expected: if g.value - g.lower < g.upper - g.value { g.lower } else { g.upper },
                slack: g.slack() + 1e-12,
                detail: Some(format!("[{}, {}]", g.lower, g.upper)),
            });
        }
    }
    let mut fact = 1.0_f64;
    for k in 1..=30u32 {
        // ln Γ(k + 1) = ln k!
        fact *= f64::from(k);
        out.push(check_rel(format!("ln gamma({})", k + 1), ln_gamma(f64::from(k) + 1.0), fact.ln(), 1e-13));
    }
    let mut half = std::f64::consts::PI.sqrt();
    for k in 0..30u32 {
        // Γ(k + 1/2) by the recurrence from Γ(1/2) = √π
        out.push(check_rel(format!("ln gamma({}.5)", k), ln_gamma(f64::from(k) + 0.5), half.ln(), 1e-13));
        half *= f64::from(k) + 0.5;
    }
    Ok(out)
}

/// Lower bounds below the solver gap and Rayleigh quotients above it over the catalog grid.
pub fn bracketing(s: &Settings) -> Result<Vec<CheckResult>> {
    let parts = catalog_grid()
        .par_iter()
        .map(|spec| {
            let (m, gap) = solve(spec, s)?;
            let tol = 1e-6 * (1.0 + gap);
            let mut out = Vec::new();
            for v in radial_bounds(&m, &s.grid)? {
                let name = format!("{} {}", spec.describe(), v.name);
                if v.name == RAYLEIGH {
                    if v.value.is_finite() {
                        out.push(check_ge(name, v.value, gap, tol));
                    }
                } else if is_informative(&v) {
                    out.push(check_le(name, v.value, gap, tol));
                }
            }
            Ok(out)
        })
        .collect();
    flatten(parts)
}

/// Variational bound equal to the gap at known eigenfunctions, and the closed
/// infimum κ² of the low-β Cauchy candidate.
pub fn chen_equality(s: &Settings) -> Result<Vec<CheckResult>> {
    let mut specs: Vec<FamilySpec> = (2..=8).map(FamilySpec::gaussian).collect();
    specs.extend(cauchy_cases());
    let parts = specs
        .par_iter()
        .map(|spec| {
            let m = model(spec, s)?;
            let chen = chen_lower(&m.measure, &m.weight, &m.candidate, &s.grid)?.value;
            let name = format!("{} chen lower", spec.describe());
            match spec.family {
                Family::Cauchy { beta } if beta - f64::from(spec.n) / 2.0 <= 2.0 => {
                    let kappa = beta - f64::from(spec.n) / 2.0;
                    Ok(vec![check_rel(name, chen, kappa * kappa, 1e-6)])
                }
                _ => {
                    let gap = spectral_gap(&m.measure, &m.weight, &s.grid)?.value;
                    Ok(vec![check_rel(name, chen, gap, 1e-4)])
                }
            }
        })
        .collect();
    flatten(parts)
}

/// Gamma-ratio bracket against the solver radial gap, exactness at α = 2 and
/// nesting of the simplified bracket.
pub fn exp_power(s: &Settings) -> Result<Vec<CheckResult>> {
    let mut specs = Vec::new();
    for alpha in [1.0, 1.5, 2.0, 4.0] {
        for n in 2..=8 {
            specs.push(FamilySpec::exp_power(alpha, n));
        }
    }
    let parts = specs
        .par_iter()
        .map(|spec| {
            let Family::ExpPower { alpha } = spec.family else { unreachable!() };
            let n = spec.n;
            let b = exp_power_explicit(n, alpha)?;
            let (_, gap) = solve(spec, s)?;
            let m2 = exp_power_second_moment(n, alpha);
            // the upper end of the spectral comparison bracket
            let full = gap.min(f64::from(n) / m2);
            let d = spec.describe();
            let tol = 1e-6 * (1.0 + full);
            let mut out = vec![
                check_ge(format!("{d} min(radial gap, n/m2) above gamma-ratio lower"), full, b.exact.lower, tol),
                check_le(format!("{d} min(radial gap, n/m2) below gamma-ratio upper"), full, b.exact.upper, tol),
                check_le(format!("{d} simplified lower below exact lower"), b.simplified.lower, b.exact.lower, 1e-12),
                check_ge(format!("{d} simplified upper above exact upper"), b.simplified.upper, b.exact.upper, 1e-12),
            ];
            if alpha == 2.0 {
                out.push(check_ge(format!("{d} bracket holds 1 from above"), 1.0, b.exact.lower, 1e-12));
                out.push(check_le(format!("{d} bracket holds 1 from below"), 1.0, b.exact.upper, 1e-12));
            }
            Ok(out)
        })
        .collect();
    let mut out = flatten(parts)?;
    for alpha in [1.0, 1.5, 2.0, 3.0, 4.0, 8.0] {
        for n in 2..=32 {
            let b = exp_power_explicit(n, alpha)?;
            out.push(check_ge(
                format!("exp-power(alpha={alpha}) n={n} nesting"),
                b.exact.lower - b.simplified.lower,
                0.0,
                1e-12,
            ));
            out.push(check_ge(
                format!("exp-power(alpha={alpha}) n={n} nesting, upper"),
                b.simplified.upper - b.exact.upper,
                0.0,
                1e-12,
            ));
        }
    }
    Ok(out)
}

/// Weighted Gaussian curvature bounds.
pub fn weighted_gaussian(s: &Settings) -> Result<Vec<CheckResult>> {
    let parts = (2..=8u32)
        .into_par_iter()
        .map(|n| {
            let m = model(&FamilySpec::new(Family::Gaussian, n, WeightChoice::OnePlusR2), s)?;
            let b = crate::bounds::bj_weighted_lower(&m.measure, &m.weight)?.value;
            let floor = if n >= 3 { 4.0 * f64::from(n - 2) } else { 4.0 };
            Ok(vec![check_ge(format!("gaussian n={n} one-plus-r2 weighted curvature bound"), b, floor, 1e-9)])
        })
        .collect();
    flatten(parts)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn checks_report_signed_slack() {
        let c = check_rel("x".into(), 1.0005, 1.0, 1e-3);
        assert!(c.passed && c.slack > 0.0);
        let c = check_le("y".into(), 2.0, 1.0, 0.5);
        assert!(!c.passed && (c.slack + 0.5).abs() < 1e-15);
    }

    #[test]
    fn gamma_suite_passes() {
        let checks = gamma_inequalities().unwrap();
        assert!(checks.len() > 60);
        assert!(checks.iter().all(|c| c.passed), "{:?}", checks.iter().find(|c| !c.passed));
    }
}
