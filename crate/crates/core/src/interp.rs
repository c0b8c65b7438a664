//! Monotone piecewise-cubic Hermite interpolation.

use crate::error::{Error, Result};

/// Nondecreasing cubic Hermite interpolant. Slopes are clamped with the
/// Fritsch–Carlson rule so the interpolant never decreases.
#[derive(Debug, Clone)]
pub struct MonotoneCubic {
    x: Vec<f64>,
    y: Vec<f64>,
    d: Vec<f64>,
}

impl MonotoneCubic {
    /// Build from nodes, values and (optionally) exact slopes. Without slopes,
    /// three-point estimates are used before clamping.
    pub fn new(x: Vec<f64>, y: Vec<f64>, slopes: Option<Vec<f64>>) -> Result<Self> {
        let n = x.len();
        if n < 2 || y.len() != n || slopes.as_ref().is_some_and(|s| s.len() != n) {
            return Err(Error::InvalidInput("interpolation needs >= 2 matching nodes".into()));
        }
        if x.windows(2).any(|w| !(w[1] > w[0])) {
            return Err(Error::InvalidInput("interpolation nodes must increase".into()));
        }
        if y.windows(2).any(|w| w[1] < w[0]) {
            return Err(Error::InvalidInput("interpolated values must be nondecreasing".into()));
        }
        let secant: Vec<f64> = (0..n - 1).map(|i| (y[i + 1] - y[i]) / (x[i + 1] - x[i])).collect();
        let mut d = match slopes {
            Some(s) => s.into_iter().map(|v| v.max(0.0)).collect::<Vec<_>>(),
            None => {
                let mut d = vec![0.0; n];
                d[0] = secant[0];
                d[n - 1] = secant[n - 2];
                for i in 1..n - 1 {
                    d[i] = if secant[i - 1] * secant[i] <= 0.0 {
                        0.0
                    } else {
                        0.5 * (secant[i - 1] + secant[i])
                    };
                }
                d
            }
        };
        for i in 0..n - 1 {
            let m = secant[i];
            if m == 0.0 {
                d[i] = 0.0;
                d[i + 1] = 0.0;
                continue;
            }
            let a = d[i] / m;
            let b = d[i + 1] / m;
            let s = a * a + b * b;
            if s > 9.0 {
                let tau = 3.0 / s.sqrt();
                d[i] = tau * a * m;
                d[i + 1] = tau * b * m;
            }
        }
        Ok(MonotoneCubic { x, y, d })
    }

    pub fn nodes(&self) -> &[f64] {
        &self.x
    }

    pub fn values(&self) -> &[f64] {
        &self.y
    }

    fn segment(&self, xv: f64) -> usize {
        let n = self.x.len();
        match self.x.binary_search_by(|p| p.total_cmp(&xv)) {
            Ok(i) => i.min(n - 2),
            Err(i) => i.saturating_sub(1).min(n - 2),
        }
    }

    fn hermite(&self, i: usize, t: f64) -> f64 {
        let h = self.x[i + 1] - self.x[i];
        let t2 = t * t;
        let t3 = t2 * t;
        let h00 = 2.0 * t3 - 3.0 * t2 + 1.0;
        let h10 = t3 - 2.0 * t2 + t;
        let h01 = -2.0 * t3 + 3.0 * t2;
        let h11 = t3 - t2;
        h00 * self.y[i] + h10 * h * self.d[i] + h01 * self.y[i + 1] + h11 * h * self.d[i + 1]
    }

    /// Evaluate, clamping outside the node range.
    pub fn eval(&self, xv: f64) -> f64 {
        let n = self.x.len();
        if xv <= self.x[0] {
            return self.y[0];
        }
        if xv >= self.x[n - 1] {
            return self.y[n - 1];
        }
        let i = self.segment(xv);
        let t = (xv - self.x[i]) / (self.x[i + 1] - self.x[i]);
        self.hermite(i, t)
    }

    /// Smallest x with eval(x) = yv (bisection inside the bracketing segment).
    pub fn inverse(&self, yv: f64) -> f64 {
        let n = self.x.len();
        if yv <= self.y[0] {
            return self.x[0];
        }
        if yv >= self.y[n - 1] {
            return self.x[n - 1];
        }
        // first node with y >= yv
        let k = self.y.partition_point(|&v| v < yv);
        let i = k - 1;
        let (mut lo, mut hi) = (0.0_f64, 1.0_f64);
        for _ in 0..60 {
            let mid = 0.5 * (lo + hi);
            if self.hermite(i, mid) < yv {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        self.x[i] + 0.5 * (lo + hi) * (self.x[i + 1] - self.x[i])
    }
}
