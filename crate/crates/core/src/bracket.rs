use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Which argument produced one side of a bracket.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Provenance {
    /// (n-1)/∫‖x‖²dμ: radial second-moment bound combined with the sphere gap n-1.
    MainTheoremLower,
    /// n/∫‖x‖²dμ: linear test function.
    MainTheoremUpper,
    /// min{λ_ν, (n-1)/m2} from the radial/spherical tensorization.
    SpectralComparisonLower,
    /// min{λ_ν, n/m2}.
    SpectralComparisonUpper,
    /// Weighted tensorization with (n-1)/∫(r²/σ²)dν.
    WeightedComparisonLower,
    /// Weighted linear test function n∫σ²dν/∫r²dν.
    WeightedComparisonUpper,
    /// Gamma-ratio closed form for exponential power laws.
    ExpPowerGammaRatio,
    /// Log-convexity simplification of the Gamma ratio.
    ExpPowerSimplified,
    /// 1/∫(1/U'')dν.
    IntegratedBakryEmery,
    /// 1/∫(1/𝒱)dν with the weighted curvature 𝒱.
    WeightedIntegratedBakryEmery,
    /// (n-1)/∫r²dν.
    RadialSecondMoment,
    /// inf V_f over a grid for an increasing test function f.
    ChenVariational,
    /// Energy/variance of a test function.
    RayleighQuotient,
    /// Exact value known in closed form.
    ClosedForm,
    /// Tabulated reference value.
    Reference,
    /// Sturm–Liouville eigensolver.
    Eigensolver,
    /// No information on this side.
    Trivial,
}

impl fmt::Display for Provenance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = serde_json::to_value(self).map_err(|_| fmt::Error)?;
        write!(f, "{}", s.as_str().unwrap_or("?"))
    }
}

/// A two-sided estimate `lower <= λ <= upper`; `upper` may be +∞.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BoundBracket {
    #[serde(with = "crate::report::float")]
    pub lower: f64,
    #[serde(with = "crate::report::float")]
    pub upper: f64,
    pub lower_source: Provenance,
    pub upper_source: Provenance,
}

impl BoundBracket {
    pub fn new(lower: f64, upper: f64, lower_source: Provenance, upper_source: Provenance) -> Result<Self> {
        if lower.is_nan() || upper.is_nan() || lower < 0.0 || !(upper > 0.0) {
            return Err(Error::InvalidInput(format!("bracket [{lower}, {upper}] is malformed")));
        }
        // tolerate rounding when both sides come from the same closed form
        if lower > upper * (1.0 + 1e-14) {
            return Err(Error::InvalidInput(format!("bracket lower {lower} exceeds upper {upper}")));
        }
        Ok(BoundBracket { lower, upper, lower_source, upper_source })
    }

    pub fn contains(&self, x: f64, tol: f64) -> bool {
        x >= self.lower - tol && x <= self.upper + tol
    }

    /// True when `other` lies inside `self` up to `tol`.
    pub fn encloses(&self, other: &BoundBracket, tol: f64) -> bool {
        self.lower <= other.lower + tol && other.upper <= self.upper + tol
    }

    pub fn width(&self) -> f64 {
        self.upper - self.lower
    }
}
