//! Concrete model families: potentials, weights, designated test functions
//! and tabulated reference gaps.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::bounds::{exp_power_explicit, CandidateFunction};
use crate::error::{Error, Result};
use crate::radial::{MeasureOptions, RadialMeasure, RadialPotential, Weight};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case", tag = "name")]
pub enum Family {
    /// V(r) = r^α/α with α >= 1.
    ExpPower { alpha: f64 },
    /// Uniform law on the unit ball.
    Ball,
    /// Density ∝ (1 + r²)^(-β) with β > n/2.
    Cauchy { beta: f64 },
    /// V(r) = r²/2.
    Gaussian,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum WeightChoice {
    Unit,
    OnePlusR2,
    InvOnePlusR2,
}

impl WeightChoice {
    pub fn key(&self) -> &'static str {
        match self {
            WeightChoice::Unit => "unit",
            WeightChoice::OnePlusR2 => "one-plus-r2",
            WeightChoice::InvOnePlusR2 => "inv-one-plus-r2",
        }
    }

    pub fn build(&self) -> Weight {
        match self {
            WeightChoice::Unit => Weight::unit(),
            WeightChoice::OnePlusR2 => Weight::new(
                "one-plus-r2",
                |r| 1.0 + r * r,
                |r| 2.0 * r,
                |_| 2.0,
                |r: f64| r.hypot(1.0),
                |r: f64| r / r.hypot(1.0),
                |r: f64| r.hypot(1.0).powi(-3),
            ),
            WeightChoice::InvOnePlusR2 => Weight::new(
                "inv-one-plus-r2",
                |r| 1.0 / (1.0 + r * r),
                |r| -2.0 * r / (1.0 + r * r).powi(2),
                |r| (6.0 * r * r - 2.0) / (1.0 + r * r).powi(3),
                |r: f64| 1.0 / r.hypot(1.0),
                |r: f64| -r * r.hypot(1.0).powi(-3),
                |r: f64| (2.0 * r * r - 1.0) * r.hypot(1.0).powi(-5),
            ),
        }
    }
}

impl fmt::Display for WeightChoice {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.key())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FamilySpec {
    pub family: Family,
    pub n: u32,
    pub weight: WeightChoice,
}

impl FamilySpec {
    pub fn new(family: Family, n: u32, weight: WeightChoice) -> Self {
        FamilySpec { family, n, weight }
    }

    pub fn gaussian(n: u32) -> Self {
        Self::new(Family::Gaussian, n, WeightChoice::Unit)
    }

    pub fn exp_power(alpha: f64, n: u32) -> Self {
        Self::new(Family::ExpPower { alpha }, n, WeightChoice::Unit)
    }

    pub fn ball(n: u32) -> Self {
        Self::new(Family::Ball, n, WeightChoice::Unit)
    }

    /// Cauchy law with the weight σ² = 1 + r² it is studied with.
    pub fn cauchy(beta: f64, n: u32) -> Self {
        Self::new(Family::Cauchy { beta }, n, WeightChoice::OnePlusR2)
    }

    pub fn validate(&self) -> Result<()> {
        if self.n < 2 {
            return Err(Error::InvalidInput(format!("dimension must be >= 2, got {}", self.n)));
        }
        match self.family {
            Family::ExpPower { alpha } if !(alpha >= 1.0 && alpha.is_finite()) => {
                Err(Error::InvalidInput(format!("exp-power needs alpha >= 1, got {alpha}")))
            }
            Family::Cauchy { beta } if !(beta > f64::from(self.n) / 2.0 && beta.is_finite()) => Err(
                Error::InvalidInput(format!("cauchy needs beta > n/2 = {}, got {beta}", f64::from(self.n) / 2.0)),
            ),
            _ => Ok(()),
        }
    }

    /// Short key such as `cauchy(beta=4) n=3 one-plus-r2`.
    pub fn describe(&self) -> String {
        let fam = match self.family {
            Family::ExpPower { alpha } => format!("exp-power(alpha={alpha})"),
            Family::Ball => "ball".into(),
            Family::Cauchy { beta } => format!("cauchy(beta={beta})"),
            Family::Gaussian => "gaussian".into(),
        };
        format!("{fam} n={} {}", self.n, self.weight)
    }
}

/// A family instance ready for the bound and solver routines.
#[derive(Debug, Clone)]
pub struct FamilyModel {
    pub spec: FamilySpec,
    pub measure: RadialMeasure,
    pub weight: Weight,
    /// Increasing function used in the variational lower bound.
    pub candidate: CandidateFunction,
    /// Test function used in Rayleigh-quotient upper bounds.
    pub test_function: CandidateFunction,
}

fn potential(spec: &FamilySpec) -> RadialPotential {
    match spec.family {
        Family::Gaussian => RadialPotential::new(|r| 0.5 * r * r, |r| r, |_| 1.0, f64::INFINITY).with_convex(true),
        Family::ExpPower { alpha } => RadialPotential::new(
            move |r: f64| r.powf(alpha) / alpha,
            move |r: f64| r.powf(alpha - 1.0),
            move |r: f64| if alpha == 1.0 { 0.0 } else { (alpha - 1.0) * r.powf(alpha - 2.0) },
            f64::INFINITY,
        )
        .with_convex(true),
        Family::Ball => RadialPotential::new(|_| 0.0, |_| 0.0, |_| 0.0, 1.0).with_convex(true),
        Family::Cauchy { beta } => RadialPotential::new(
            move |r: f64| {
                if r > 1.0 {
                    beta * (2.0 * r.ln() + (1.0 / (r * r)).ln_1p())
                } else {
                    beta * (r * r).ln_1p()
                }
            },
            move |r: f64| 2.0 * beta / (r + 1.0 / r),
            move |r: f64| {
                if r > 1.0 {
                    let u2 = 1.0 / (r * r);
                    2.0 * beta * (u2 - 1.0) * u2 / (1.0 + u2).powi(2)
                } else {
                    2.0 * beta * (1.0 - r * r) / (1.0 + r * r).powi(2)
                }
            },
            f64::INFINITY,
        ),
    }
}

fn ball_candidate(n: u32) -> CandidateFunction {
    // f' = r^(-(n-1)/2)
    let p = -(f64::from(n) - 1.0) / 2.0;
    let q = p + 1.0;
    CandidateFunction::new(
        &format!("antiderivative of r^{p}"),
        move |r: f64| if q == 0.0 { r.ln() } else { r.powf(q) / q },
        move |r: f64| r.powf(p),
        move |r: f64| p * r.powf(p - 1.0),
        move |r: f64| p * (p - 1.0) * r.powf(p - 2.0),
    )
}

fn candidates(spec: &FamilySpec) -> (CandidateFunction, CandidateFunction) {
    let n = f64::from(spec.n);
    match spec.family {
        Family::Gaussian => (CandidateFunction::shifted_square(n), CandidateFunction::linear()),
        Family::ExpPower { alpha } => (CandidateFunction::power(alpha), CandidateFunction::linear()),
        Family::Ball => (ball_candidate(spec.n), CandidateFunction::linear()),
        Family::Cauchy { beta } => {
            let kappa = beta - n / 2.0;
            if kappa > 2.0 {
                let f = CandidateFunction::shifted_square(n / (2.0 * beta - 2.0 - n));
                (f.clone(), f)
            } else {
                (
                    CandidateFunction::one_plus_square_power(kappa / 2.0),
                    CandidateFunction::one_plus_square_power(kappa / 8.0),
                )
            }
        }
    }
}

pub fn make_family(spec: &FamilySpec) -> Result<FamilyModel> {
    make_family_with(spec, MeasureOptions::default())
}

pub fn make_family_with(spec: &FamilySpec, options: MeasureOptions) -> Result<FamilyModel> {
    spec.validate()?;
    let measure = RadialMeasure::with_options(spec.n, potential(spec), options)?;
    let weight = spec.weight.build();
    let grid = measure.diagnostic_grid(64);
    weight.check(&grid)?;
    let (candidate, test_function) = candidates(spec);
    Ok(FamilyModel { spec: *spec, measure, weight, candidate, test_function })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Scope {
    Radial,
    Full,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ReferenceKind {
    Exact,
    Bracket,
    OrderOnly,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ReferenceGap {
    pub kind: ReferenceKind,
    #[serde(with = "crate::report::float")]
    pub lower: f64,
    #[serde(with = "crate::report::float")]
    pub upper: f64,
    /// Growth exponent in n where only the order is known.
    pub order_exponent: Option<f64>,
    pub source: String,
}

impl ReferenceGap {
    fn exact(value: f64, source: &str) -> Self {
        ReferenceGap { kind: ReferenceKind::Exact, lower: value, upper: value, order_exponent: None, source: source.into() }
    }

    fn bracket(lower: f64, upper: f64, source: &str) -> Self {
        ReferenceGap { kind: ReferenceKind::Bracket, lower, upper, order_exponent: None, source: source.into() }
    }

    fn order(exponent: f64, source: &str) -> Self {
        ReferenceGap {
            kind: ReferenceKind::OrderOnly,
            lower: 0.0,
            upper: f64::INFINITY,
            order_exponent: Some(exponent),
            source: source.into(),
        }
    }

    /// Exact value, when known.
    pub fn value(&self) -> Option<f64> {
        (self.kind == ReferenceKind::Exact).then_some(self.lower)
    }
}

/// Thresholds of the Cauchy tables for n >= 3: n/2 + 2, n(n+2)/(n+1), n + 1.
pub fn cauchy_thresholds(n: u32) -> [f64; 3] {
    let n = f64::from(n);
    if n < 3.0 {
        return [(3.0 + 5f64.sqrt()) / 2.0, 3.0, 3.0];
    }
    [n / 2.0 + 2.0, n * (n + 2.0) / (n + 1.0), n + 1.0]
}

/// Radial gap of the Cauchy law with σ² = 1 + r².
pub fn cauchy_radial_gap(beta: f64, n: u32) -> f64 {
    let kappa = beta - f64::from(n) / 2.0;
    if kappa <= 2.0 {
        kappa * kappa
    } else {
        4.0 * (kappa - 1.0)
    }
}

fn cauchy_full(beta: f64, n: u32) -> ReferenceGap {
    let nf = f64::from(n);
    let radial = cauchy_radial_gap(beta, n);
    if n == 2 {
        let golden = (3.0 + 5f64.sqrt()) / 2.0;
        return if beta <= golden {
            ReferenceGap::exact(radial, "cauchy n=2, low beta")
        } else if beta <= 3.0 {
            ReferenceGap::bracket(beta, radial, "cauchy n=2, middle beta")
        } else {
            ReferenceGap::bracket(beta, 2.0 * (beta - 1.0), "cauchy n=2, high beta")
        };
    }
    let [t1, t2, t3] = cauchy_thresholds(n);
    let comparison = 2.0 * beta * (nf - 1.0) / nf;
    if beta <= t1 {
        ReferenceGap::exact(radial, "cauchy n>=3, essential-spectrum branch")
    } else if beta <= t2 {
        ReferenceGap::exact(radial, "cauchy n>=3, eigenfunction branch")
    } else if beta <= t3 {
        ReferenceGap::bracket(comparison, radial, "cauchy n>=3, comparison branch")
    } else {
        ReferenceGap::bracket(comparison, 2.0 * (beta - 1.0), "cauchy n>=3, linear test function branch")
    }
}

pub fn reference_gap(spec: &FamilySpec, scope: Scope) -> Result<ReferenceGap> {
    spec.validate()?;
    let n = f64::from(spec.n);
    let none = || ReferenceGap::bracket(0.0, f64::INFINITY, "no closed form");
    let r = match (spec.family, spec.weight, scope) {
        (Family::Gaussian, WeightChoice::Unit, Scope::Full) => ReferenceGap::exact(1.0, "gaussian"),
        (Family::Gaussian, WeightChoice::Unit, Scope::Radial) => ReferenceGap::exact(2.0, "gaussian radial eigenpair r^2 - n"),
        (Family::ExpPower { alpha }, WeightChoice::Unit, Scope::Full) => {
            if alpha == 2.0 {
                ReferenceGap::exact(1.0, "gaussian")
            } else {
                let b = exp_power_explicit(spec.n, alpha)?.exact;
                ReferenceGap::bracket(b.lower, b.upper, "exp-power gamma ratio")
            }
        }
        (Family::ExpPower { alpha }, WeightChoice::Unit, Scope::Radial) => {
            if alpha == 2.0 {
                ReferenceGap::exact(2.0, "gaussian radial eigenpair r^2 - n")
            } else {
                ReferenceGap::order(1.0 - 2.0 / alpha, "exp-power radial order")
            }
        }
        (Family::Ball, WeightChoice::Unit, Scope::Full) => {
            ReferenceGap::bracket((n - 1.0) * (n + 2.0) / n, n + 2.0, "ball")
        }
        (Family::Ball, WeightChoice::Unit, Scope::Radial) => ReferenceGap {
            order_exponent: Some(2.0),
            ..ReferenceGap::bracket((n * n - 1.0) / 4.0, f64::INFINITY, "ball radial variational bound")
        },
        (Family::Cauchy { beta }, WeightChoice::OnePlusR2, Scope::Radial) => {
            let source = if beta - n / 2.0 <= 2.0 { "cauchy radial, low beta" } else { "cauchy radial eigenpair" };
            ReferenceGap::exact(cauchy_radial_gap(beta, spec.n), source)
        }
        (Family::Cauchy { beta }, WeightChoice::OnePlusR2, Scope::Full) => cauchy_full(beta, spec.n),
        (Family::Gaussian, WeightChoice::OnePlusR2, Scope::Full) => {
            ReferenceGap::bracket(n - 1.0, n + 1.0, "weighted gaussian 1+r^2")
        }
        (Family::Gaussian, WeightChoice::OnePlusR2, Scope::Radial) => {
            let lower = if spec.n >= 3 { 4.0 * (n - 2.0) } else { 4.0 };
            ReferenceGap::bracket(lower, f64::INFINITY, "weighted gaussian 1+r^2, weighted curvature")
        }
        (Family::Gaussian, WeightChoice::InvOnePlusR2, Scope::Full) => {
            let upper = if spec.n >= 3 { (1.0 / (n - 2.0)).min(1.0) } else { 1.0 };
            ReferenceGap::bracket((n - 1.0) / (n * (n + 3.0)), upper, "weighted gaussian 1/(1+r^2)")
        }
        _ => none(),
    };
    Ok(r)
}

/// The parameter sweep used by the soundness checks, sorted by parameter tuple.
pub fn catalog_grid() -> Vec<FamilySpec> {
    let mut out = Vec::new();
    for alpha in [1.0, 1.5, 2.0, 4.0] {
        for n in [2, 3, 4, 6, 8] {
            out.push(FamilySpec::exp_power(alpha, n));
        }
    }
    for n in [2, 3, 4, 8, 16] {
        out.push(FamilySpec::ball(n));
    }
    let betas: [(u32, [f64; 5]); 4] = [
        (2, [1.5, 2.0, 3.0, 4.0, 6.0]),
        (3, [1.6, 2.5, 3.5, 4.0, 6.0]),
        (4, [2.5, 3.0, 4.0, 5.0, 7.0]),
        (6, [3.5, 4.0, 5.0, 6.0, 9.0]),
    ];
    for (n, bs) in betas {
        for beta in bs {
            out.push(FamilySpec::cauchy(beta, n));
        }
    }
    for n in [2, 3, 4, 6, 8] {
        out.push(FamilySpec::new(Family::Gaussian, n, WeightChoice::OnePlusR2));
        out.push(FamilySpec::new(Family::Gaussian, n, WeightChoice::InvOnePlusR2));
    }
    for n in 2..=8 {
        out.push(FamilySpec::gaussian(n));
    }
    out
}
