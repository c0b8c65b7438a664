//! Adaptive Gauss–Kronrod (7/15) quadrature with global error control.
//!
//! Semi-infinite ranges are split at a pivot; the tail is integrated in the
//! logarithmic variable u = ln(r/pivot), which turns power-law tails into
//! exponentially decaying integrands. The tail is cut at [`RADIUS_CAP`].

use std::cmp::Ordering;
use std::collections::BinaryHeap;

use crate::error::{Error, Result};

/// Largest radius any integral or grid is allowed to touch.
pub const RADIUS_CAP: f64 = 1e150;

pub(crate) const XGK: [f64; 8] = [
    0.991_455_371_120_812_6,
    0.949_107_912_342_758_5,
    0.864_864_423_359_769_1,
    0.741_531_185_599_394_4,
    0.586_087_235_467_691_1,
    0.405_845_151_377_397_2,
    0.207_784_955_007_898_5,
    0.0,
];
pub(crate) const WGK: [f64; 8] = [
    0.022_935_322_010_529_22,
    0.063_092_092_629_978_55,
    0.104_790_010_322_250_2,
    0.140_653_259_715_525_9,
    0.169_004_726_639_267_9,
    0.190_350_578_064_785_4,
    0.204_432_940_075_298_9,
    0.209_482_141_084_728_8,
];
const WG: [f64; 4] = [
    0.129_484_966_168_869_7,
    0.279_705_391_489_276_7,
    0.381_830_050_505_118_9,
    0.417_959_183_673_469_4,
];

#[derive(Debug, Clone, Copy)]
pub struct Tolerance {
    pub rel: f64,
    pub abs: f64,
    pub max_segments: usize,
}

impl Default for Tolerance {
    fn default() -> Self {
        Tolerance { rel: 1e-12, abs: 1e-300, max_segments: 4000 }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Quadrature {
    pub value: f64,
    pub abs_error: f64,
    pub segments: usize,
}

#[derive(Debug, Clone, Copy)]
struct Segment {
    a: f64,
    b: f64,
    value: f64,
    error: f64,
}

impl PartialEq for Segment {
    fn eq(&self, other: &Self) -> bool {
        self.error == other.error
    }
}
impl Eq for Segment {}
impl PartialOrd for Segment {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}
impl Ord for Segment {
    fn cmp(&self, other: &Self) -> Ordering {
        self.error.total_cmp(&other.error)
    }
}

fn kronrod<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64) -> Result<Segment> {
    let center = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    let fc = f(center);
    let mut kron = fc * WGK[7];
    let mut gauss = fc * WG[3];
    for j in 0..7 {
        let dx = half * XGK[j];
        let s = f(center - dx) + f(center + dx);
        kron += WGK[j] * s;
        if j % 2 == 1 {
            gauss += WG[j / 2] * s;
        }
    }
    let value = kron * half;
    let error = ((kron - gauss) * half).abs();
    if !value.is_finite() || !error.is_finite() {
        return Err(Error::DomainError(format!(
            "integrand not finite on [{a:e}, {b:e}]"
        )));
    }
    Ok(Segment { a, b, value, error })
}

/// Integrate `f` over the union of consecutive intervals given by `breaks`.
pub fn integrate_breaks<F: Fn(f64) -> f64>(
    f: &F,
    breaks: &[f64],
    tol: Tolerance,
) -> Result<Quadrature> {
    if breaks.len() < 2 {
        return Ok(Quadrature { value: 0.0, abs_error: 0.0, segments: 0 });
    }
    let mut heap = BinaryHeap::new();
    for w in breaks.windows(2) {
        if w[1] > w[0] {
            heap.push(kronrod(f, w[0], w[1])?);
        }
    }
    loop {
        let (total, err) = heap
            .iter()
            .fold((0.0, 0.0), |(v, e), s| (v + s.value, e + s.error));
        if err <= tol.abs.max(tol.rel * total.abs()) {
            return Ok(Quadrature { value: total, abs_error: err, segments: heap.len() });
        }
        if heap.len() >= tol.max_segments {
            // accept when the residual error is at roundoff level
            if err <= 1e-9 * total.abs().max(tol.abs) {
                return Ok(Quadrature { value: total, abs_error: err, segments: heap.len() });
            }
            return Err(Error::ConvergenceError(format!(
                "quadrature did not converge: value {total:e}, error {err:e}"
            )));
        }
        let worst = heap.pop().expect("heap is non-empty");
        let mid = 0.5 * (worst.a + worst.b);
        if mid <= worst.a || mid >= worst.b {
            // interval exhausted at machine precision; freeze it
            heap.push(Segment { error: 0.0, ..worst });
            continue;
        }
        heap.push(kronrod(f, worst.a, mid)?);
        heap.push(kronrod(f, mid, worst.b)?);
    }
}

/// Integrate over a finite interval.
pub fn integrate<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64, tol: Tolerance) -> Result<Quadrature> {
    integrate_breaks(f, &[a, b], tol)
}

fn geometric_breaks(lo: f64, hi: f64, scale: f64) -> Vec<f64> {
    let mut pts = vec![lo];
    let mut x = scale / 256.0;
    while x < hi {
        if x > lo {
            pts.push(x);
        }
        x *= 2.0;
    }
    pts.push(hi);
    pts
}

/// Integrate a radial integrand over (lo, hi), where `hi` may be infinite.
///
/// `scale` is a characteristic radius of the integrand (the bulk of the mass
/// lives within a few multiples of it); it only seeds the initial partition.
pub fn integrate_radial<F: Fn(f64) -> f64>(
    f: &F,
    lo: f64,
    hi: f64,
    scale: f64,
    tol: Tolerance,
) -> Result<Quadrature> {
    if !(hi > lo) {
        return Ok(Quadrature { value: 0.0, abs_error: 0.0, segments: 0 });
    }
    let hi_eff = hi.min(RADIUS_CAP);
    let pivot = (8.0 * scale).max(lo);
    if hi_eff <= pivot * 1.000_001 || hi.is_finite() && hi <= 64.0 * scale {
        return integrate_breaks(f, &geometric_breaks(lo, hi_eff, scale), tol);
    }
    let head = integrate_breaks(f, &geometric_breaks(lo, pivot, scale), tol)?;
    let u_max = (hi_eff / pivot).ln();
    let g = |u: f64| {
        let r = pivot * u.exp();
        f(r) * r
    };
    let mut ubreaks = vec![0.0];
    let mut u = 0.125;
    while u < u_max {
        ubreaks.push(u);
        u *= 2.0;
    }
    ubreaks.push(u_max);
    // the tail only needs accuracy relative to the whole integral
    let tail_tol = Tolerance { abs: tol.abs.max(0.25 * tol.rel * head.value.abs()), ..tol };
    let tail = integrate_breaks(&g, &ubreaks, tail_tol)?;
    Ok(Quadrature {
        value: head.value + tail.value,
        abs_error: head.abs_error + tail.abs_error,
        segments: head.segments + tail.segments,
    })
}
