//! Side-by-side tables of computed bounds, solver values and closed forms.

use rayon::prelude::*;

use crate::analysis::{moments, radial_bounds, BJ_WEIGHTED};
use crate::bounds::{exp_power_explicit, main_theorem_bracket, weighted_comparison};
use crate::catalog::{cauchy_radial_gap, cauchy_thresholds, make_family_with, reference_gap, Family, FamilySpec, Scope, WeightChoice};
use crate::eigen::spectral_gap;
use crate::error::{Error, Result};
use crate::report::{Table, TableRow};
use crate::verify::Settings;

fn columns(names: &[&str]) -> Vec<String> {
    names.iter().map(|s| s.to_string()).collect()
}

fn finite(x: f64) -> Option<f64> {
    x.is_finite().then_some(x)
}

/// Columns n, alpha, gamma-ratio bracket, simplified bracket, solver radial
/// gap and n^(1-2/α); rows sorted by (alpha, n).
pub fn exp_power_asymptotics(alphas: &[f64], dims: &[u32], s: &Settings) -> Result<Table> {
    let mut cases = Vec::new();
    for &alpha in alphas {
        for &n in dims {
            FamilySpec::exp_power(alpha, n).validate()?;
            cases.push((alpha, n));
        }
    }
    let rows: Vec<Result<TableRow>> = cases
        .par_iter()
        .map(|&(alpha, n)| {
            let spec = FamilySpec::exp_power(alpha, n);
            let m = make_family_with(&spec, s.options)?;
            let gap = spectral_gap(&m.measure, &m.weight, &s.grid)?;
            let b = exp_power_explicit(n, alpha)?;
            Ok(TableRow {
                label: spec.describe(),
                cells: vec![
                    Some(f64::from(n)),
                    Some(alpha),
                    Some(b.exact.lower),
                    Some(b.exact.upper),
                    Some(b.simplified.lower),
                    Some(b.simplified.upper),
                    Some(gap.value),
                    Some(gap.error_estimate),
                    Some(b.order),
                ],
            })
        })
        .collect();
    Ok(Table {
        columns: columns(&[
            "n",
            "alpha",
            "lower",
            "upper",
            "simplified_lower",
            "simplified_upper",
            "solver_radial",
            "solver_error",
            "order",
        ]),
        rows: rows.into_iter().collect::<Result<_>>()?,
    })
}

/// Full bracket, radial lower bound (n²-1)/4 and solver radial gap per dimension.
pub fn ball(dims: &[u32], s: &Settings) -> Result<Table> {
    let rows: Vec<Result<TableRow>> = dims
        .par_iter()
        .map(|&n| {
            let spec = FamilySpec::ball(n);
            let m = make_family_with(&spec, s.options)?;
            let gap = spectral_gap(&m.measure, &m.weight, &s.grid)?;
            let nf = f64::from(n);
            let main = main_theorem_bracket(n, m.measure.moment(2)?)?;
            Ok(TableRow {
                label: spec.describe(),
                cells: vec![
                    Some(nf),
                    Some(main.lower),
                    Some(main.upper),
                    Some((nf * nf - 1.0) / 4.0),
                    Some(gap.value),
                    Some(gap.error_estimate),
                ],
            })
        })
        .collect();
    Ok(Table {
        columns: columns(&["n", "full_lower", "full_upper", "radial_lower", "solver_radial", "solver_error"]),
        rows: rows.into_iter().collect::<Result<_>>()?,
    })
}

fn cauchy_rows(n: u32, betas: &[f64], s: &Settings) -> Result<Table> {
    let rows: Vec<Result<TableRow>> = betas
        .par_iter()
        .map(|&beta| {
            let spec = FamilySpec::cauchy(beta, n);
            let m = make_family_with(&spec, s.options)?;
            let gap = spectral_gap(&m.measure, &m.weight, &s.grid)?;
            let full = reference_gap(&spec, Scope::Full)?;
            let mo = moments(&m)?;
            let cmp = match (mo.r2_over_s2, mo.s2, mo.m2) {
                (Some(a), Some(b), Some(m2)) => Some(weighted_comparison(gap.value, n, a, b, m2)?),
                _ => None,
            };
            Ok(TableRow {
                label: format!("{} [{}]", spec.describe(), full.source),
                cells: vec![
                    Some(beta),
                    Some(cauchy_radial_gap(beta, n)),
                    Some(gap.value),
                    Some(gap.error_estimate),
                    finite(full.lower),
                    finite(full.upper),
                    cmp.map(|b| b.lower),
                    cmp.map(|b| b.upper),
                ],
            })
        })
        .collect();
    Ok(Table {
        columns: columns(&[
            "beta",
            "radial_exact",
            "solver_radial",
            "solver_error",
            "full_lower",
            "full_upper",
            "comparison_lower",
            "comparison_upper",
        ]),
        rows: rows.into_iter().collect::<Result<_>>()?,
    })
}

/// Parameters spread over the branches of the Cauchy tables, thresholds included.
pub fn cauchy_betas(n: u32) -> Vec<f64> {
    let h = f64::from(n) / 2.0;
    let [t1, t2, t3] = cauchy_thresholds(n);
    let mut betas = vec![h + 0.1, h + 0.5, h + 1.0, t1, t2, t3, t3 + 1.0, t3 + 3.0];
    if n == 2 {
        betas = vec![1.1, 1.5, 2.0, t1, 2.8, 3.0, 4.0, 6.0];
    }
    betas.sort_by(f64::total_cmp);
    betas.dedup();
    betas
}

pub fn cauchy(n: u32, s: &Settings) -> Result<Table> {
    cauchy_rows(n, &cauchy_betas(n), s)
}

/// Both weighted Gaussian cases for n = 2..8.
pub fn gaussian_weighted(s: &Settings) -> Result<Table> {
    let mut cases = Vec::new();
    for w in [WeightChoice::OnePlusR2, WeightChoice::InvOnePlusR2] {
        for n in 2..=8 {
            cases.push(FamilySpec::new(Family::Gaussian, n, w));
        }
    }
    let rows: Vec<Result<TableRow>> = cases
        .par_iter()
        .map(|spec| {
            let m = make_family_with(spec, s.options)?;
            let gap = spectral_gap(&m.measure, &m.weight, &s.grid)?;
            let values = radial_bounds(&m, &s.grid)?;
            let bj = values.iter().find(|v| v.name == BJ_WEIGHTED).map(|v| v.value).and_then(finite);
            let radial_ref = reference_gap(spec, Scope::Radial)?;
            let full = reference_gap(spec, Scope::Full)?;
            let mo = moments(&m)?;
            let (Some(a), Some(b), Some(m2)) = (mo.r2_over_s2, mo.s2, mo.m2) else {
                return Err(Error::NonIntegrable("weighted gaussian moments".into()));
            };
            let cmp = weighted_comparison(gap.value, spec.n, a, b, m2)?;
            Ok(TableRow {
                label: spec.describe(),
                cells: vec![
                    Some(f64::from(spec.n)),
                    bj,
                    finite(radial_ref.lower).filter(|&v| v > 0.0),
                    Some(gap.value),
                    Some(gap.error_estimate),
                    Some(full.lower),
                    Some(full.upper),
                    Some(cmp.lower),
                    Some(cmp.upper),
                ],
            })
        })
        .collect();
    Ok(Table {
        columns: columns(&[
            "n",
            "bj_weighted_lower",
            "radial_reference_lower",
            "solver_radial",
            "solver_error",
            "full_lower",
            "full_upper",
            "comparison_lower",
            "comparison_upper",
        ]),
        rows: rows.into_iter().collect::<Result<_>>()?,
    })
}
