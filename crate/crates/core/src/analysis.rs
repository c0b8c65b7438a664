//! Evaluation of every bound that applies to a catalog family.

use crate::bounds::{
    bj_lower, bj_radial_lower, bj_weighted_lower, chen_lower, exp_power_explicit, main_theorem_bracket, rayleigh_upper,
    spectral_comparison, weighted_comparison, LowerBound,
};
use crate::bracket::{BoundBracket, Provenance};
use crate::catalog::{reference_gap, Family, FamilyModel, ReferenceKind, Scope, WeightChoice};
use crate::eigen::GridSpec;
use crate::error::{Error, Result};
use crate::radial::WeightedKind;
use crate::report::{NamedBracket, NamedValue};

pub const BJ_RADIAL: &str = "bj-radial-lower";
pub const BJ: &str = "bj-lower";
pub const BJ_WEIGHTED: &str = "bj-weighted-lower";
pub const CHEN: &str = "chen-lower";
pub const RAYLEIGH: &str = "rayleigh-upper";

/// Moments entering the full-space brackets; `None` when not integrable.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Moments {
    pub m2: Option<f64>,
    pub r2_over_s2: Option<f64>,
    pub s2: Option<f64>,
}

fn optional(x: Result<f64>) -> Result<Option<f64>> {
    match x {
        Ok(v) => Ok(Some(v)),
        Err(Error::NonIntegrable(_)) => Ok(None),
        Err(e) => Err(e),
    }
}

pub fn moments(model: &FamilyModel) -> Result<Moments> {
    let m = &model.measure;
    Ok(Moments {
        m2: optional(m.moment(2))?,
        r2_over_s2: optional(m.weighted_moment(&model.weight, WeightedKind::R2OverS2))?,
        s2: optional(m.weighted_moment(&model.weight, WeightedKind::S2))?,
    })
}

fn lower_value(name: &str, bound: Result<LowerBound>, source: Provenance) -> Result<NamedValue> {
    match bound {
        Ok(b) => Ok(NamedValue::from_lower(name, &b, source)),
        Err(Error::HypothesisFailed(msg) | Error::NonIntegrable(msg)) => Ok(NamedValue::not_applicable(name, source, msg)),
        Err(e) => Err(e),
    }
}

/// Radial lower bounds matching the generator of the family (unweighted
/// bounds for σ ≡ 1, the weighted curvature bound otherwise), the variational
/// bound with the designated test function and the Rayleigh quotient of the
/// designated upper-bound test function.
pub fn radial_bounds(model: &FamilyModel, grid: &GridSpec) -> Result<Vec<NamedValue>> {
    let (m, w) = (&model.measure, &model.weight);
    let mut out = Vec::new();
    if model.spec.weight == WeightChoice::Unit {
        out.push(match bj_radial_lower(m) {
            Ok(v) => NamedValue::new(BJ_RADIAL, v, Provenance::RadialSecondMoment),
            Err(Error::NonIntegrable(msg)) => NamedValue::not_applicable(BJ_RADIAL, Provenance::RadialSecondMoment, msg),
            Err(e) => return Err(e),
        });
        out.push(lower_value(BJ, bj_lower(m), Provenance::IntegratedBakryEmery)?);
    } else {
        out.push(lower_value(BJ_WEIGHTED, bj_weighted_lower(m, w), Provenance::WeightedIntegratedBakryEmery)?);
    }
    out.push(lower_value(CHEN, chen_lower(m, w, &model.candidate, grid), Provenance::ChenVariational)?);
    out.push(match rayleigh_upper(m, w, &model.test_function) {
        Ok(v) => NamedValue::new(RAYLEIGH, v, Provenance::RayleighQuotient),
        Err(Error::NonIntegrable(msg) | Error::DegenerateFunction(msg)) => {
            NamedValue::not_applicable(RAYLEIGH, Provenance::RayleighQuotient, msg)
        }
        Err(e) => return Err(e),
    });
    Ok(out)
}

/// Best radial bracket: the exact value when tabulated, otherwise the largest
/// informative lower bound and the Rayleigh quotient.
pub fn radial_bracket(model: &FamilyModel, values: &[NamedValue]) -> Result<BoundBracket> {
    let reference = reference_gap(&model.spec, Scope::Radial)?;
    if reference.kind == ReferenceKind::Exact {
        return BoundBracket::new(reference.lower, reference.upper, Provenance::ClosedForm, Provenance::ClosedForm);
    }
    let mut lower = (0.0, Provenance::Trivial);
    let mut upper = (f64::INFINITY, Provenance::Trivial);
    for v in values {
        if v.status == "not-applicable" || v.status == "non-informative" || !v.value.is_finite() {
            continue;
        }
        if v.name == RAYLEIGH {
            if v.value < upper.0 {
                upper = (v.value, v.source);
            }
        } else if v.value > lower.0 {
            lower = (v.value, v.source);
        }
    }
    if reference.lower > lower.0 {
        lower = (reference.lower, Provenance::Reference);
    }
    BoundBracket::new(lower.0, upper.0.max(lower.0), lower.1, upper.1)
}

/// Combine a radial bracket with the spherical part.
pub fn full_comparison(model: &FamilyModel, radial: &BoundBracket, moments: &Moments) -> Result<Option<BoundBracket>> {
    let n = model.spec.n;
    let relabel = |src: Provenance, radial_src: Provenance| {
        if src == Provenance::Eigensolver {
            radial_src
        } else {
            src
        }
    };
    let pair = if model.spec.weight == WeightChoice::Unit {
        let Some(m2) = moments.m2 else { return Ok(None) };
        (spectral_comparison(radial.lower, n, m2)?, spectral_comparison(radial.upper, n, m2)?)
    } else {
        let (Some(a), Some(b), Some(m2)) = (moments.r2_over_s2, moments.s2, moments.m2) else {
            return Ok(None);
        };
        (weighted_comparison(radial.lower, n, a, b, m2)?, weighted_comparison(radial.upper, n, a, b, m2)?)
    };
    let (lo, hi) = pair;
    BoundBracket::new(
        lo.lower,
        hi.upper.max(lo.lower),
        relabel(lo.lower_source, radial.lower_source),
        relabel(hi.upper_source, radial.upper_source),
    )
    .map(Some)
}

/// Closed-form full-space brackets: main theorem, exponential-power forms and
/// the tabulated reference bracket.
pub fn closed_form_brackets(model: &FamilyModel, moments: &Moments) -> Result<Vec<NamedBracket>> {
    let mut out = Vec::new();
    let spec = &model.spec;
    if spec.weight == WeightChoice::Unit && model.measure.potential().is_convex() {
        if let Some(m2) = moments.m2 {
            out.push(NamedBracket { name: "main-theorem".into(), bracket: main_theorem_bracket(spec.n, m2)? });
        }
    }
    if let Family::ExpPower { alpha } = spec.family {
        let b = exp_power_explicit(spec.n, alpha)?;
        out.push(NamedBracket { name: "exp-power-gamma-ratio".into(), bracket: b.exact });
        out.push(NamedBracket { name: "exp-power-simplified".into(), bracket: b.simplified });
    }
    let reference = reference_gap(spec, Scope::Full)?;
    if reference.lower > 0.0 || reference.upper.is_finite() {
        let source = if reference.kind == ReferenceKind::Exact { Provenance::ClosedForm } else { Provenance::Reference };
        out.push(NamedBracket {
            name: format!("reference: {}", reference.source),
            bracket: BoundBracket::new(reference.lower, reference.upper, source, source)?,
        });
    }
    Ok(out)
}

/// Everything the `bounds` command reports for one family.
#[derive(Debug, Clone)]
pub struct FamilyBounds {
    pub values: Vec<NamedValue>,
    pub radial: BoundBracket,
    pub brackets: Vec<NamedBracket>,
}

pub fn family_bounds(model: &FamilyModel, grid: &GridSpec) -> Result<FamilyBounds> {
    let values = radial_bounds(model, grid)?;
    let radial = radial_bracket(model, &values)?;
    let moments = moments(model)?;
    let mut brackets = vec![NamedBracket { name: "radial".into(), bracket: radial }];
    if let Some(b) = full_comparison(model, &radial, &moments)? {
        let name = if model.spec.weight == WeightChoice::Unit { "spectral-comparison" } else { "weighted-comparison" };
        brackets.push(NamedBracket { name: name.into(), bracket: b });
    }
    brackets.extend(closed_form_brackets(model, &moments)?);
    Ok(FamilyBounds { values, radial, brackets })
}

/// True when a lower-bound entry carries a usable number.
pub fn is_informative(v: &NamedValue) -> bool {
    v.status == "informative" || v.status == "grid-infimum"
}
