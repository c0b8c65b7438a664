//! Exact sampling of spherically symmetric laws (inverse-CDF radius times a
//! uniform direction) and batch-means Rayleigh quotient estimates.
//!
//! Draws are split into fixed chunks of [`CHUNK`] points; chunk k uses a
//! ChaCha8 generator seeded with the user seed on stream k, so results do not
//! depend on how chunks are distributed over threads.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::radial::{RadialMeasure, Weight};

pub const CHUNK: usize = 4096;
pub const BATCHES: usize = 16;
const Z95: f64 = 1.959_963_984_540_054;

fn chunk_rng(seed: u64, k: usize) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(k as u64);
    rng
}

fn chunks(count: usize) -> Vec<(usize, usize)> {
    (0..count.div_ceil(CHUNK)).map(|k| (k, CHUNK.min(count - k * CHUNK))).collect()
}

/// Independent draws of the radius ‖X‖.
pub fn sample_radius(measure: &RadialMeasure, count: usize, seed: u64) -> Vec<f64> {
    chunks(count)
        .into_par_iter()
        .map(|(k, len)| {
            let mut rng = chunk_rng(seed, k);
            (0..len).map(|_| measure.quantile(rng.random::<f64>())).collect::<Vec<_>>()
        })
        .flatten()
        .collect()
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SampleBatch {
    pub dimension: usize,
    pub seed: u64,
    pub count: usize,
    /// Row-major points, `dimension` coordinates each.
    pub coords: Vec<f64>,
}

impl SampleBatch {
    pub fn point(&self, i: usize) -> &[f64] {
        &self.coords[i * self.dimension..(i + 1) * self.dimension]
    }

    pub fn points(&self) -> impl Iterator<Item = &[f64]> {
        self.coords.chunks_exact(self.dimension)
    }
}

/// Independent draws of X: radius by inverse CDF times a normalized Gaussian direction.
pub fn sample_mu(measure: &RadialMeasure, count: usize, seed: u64) -> SampleBatch {
    let n = measure.dimension() as usize;
    let coords = chunks(count)
        .into_par_iter()
        .map(|(k, len)| {
            let mut rng = chunk_rng(seed, k);
            let mut out = Vec::with_capacity(len * n);
            let mut dir = vec![0.0; n];
            for _ in 0..len {
                let r = measure.quantile(rng.random::<f64>());
                let norm = loop {
                    dir.iter_mut().for_each(|d| *d = rng.sample(StandardNormal));
                    let s = dir.iter().map(|d| d * d).sum::<f64>().sqrt();
                    if s > 0.0 {
                        break s;
                    }
                };
                out.extend(dir.iter().map(|d| r * d / norm));
            }
            out
        })
        .flatten()
        .collect();
    SampleBatch { dimension: n, seed, count, coords }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RayleighResult {
    pub ratio: f64,
    pub ci_half_width: f64,
    pub batches: usize,
}

impl RayleighResult {
    pub fn contains(&self, x: f64) -> bool {
        (self.ratio - x).abs() <= self.ci_half_width
    }
}

/// E[σ²‖∇f‖²]/Var f with a 95% delta-method interval over 16 batch means.
pub fn rayleigh_estimate<F, G>(batch: &SampleBatch, f: F, grad_f: G, weight: &Weight) -> Result<RayleighResult>
where
    F: Fn(&[f64]) -> f64 + Sync,
    G: Fn(&[f64], &mut [f64]) + Sync,
{
    if batch.count < BATCHES {
        return Err(Error::InvalidInput(format!("need at least {BATCHES} points, got {}", batch.count)));
    }
    let size = batch.count / BATCHES;
    let n = batch.dimension;
    // per batch: means of σ²‖∇f‖², f, f²
    let sums: Vec<[f64; 3]> = (0..BATCHES)
        .into_par_iter()
        .map(|j| {
            let mut grad = vec![0.0; n];
            let mut acc = [0.0; 3];
            for i in j * size..(j + 1) * size {
                let x = batch.point(i);
                let r = x.iter().map(|v| v * v).sum::<f64>().sqrt();
                grad_f(x, &mut grad);
                let fx = f(x);
                acc[0] += weight.s2(r) * grad.iter().map(|g| g * g).sum::<f64>();
                acc[1] += fx;
                acc[2] += fx * fx;
            }
            acc.map(|a| a / size as f64)
        })
        .collect();
    let mean = |k: usize| sums.iter().map(|s| s[k]).sum::<f64>() / BATCHES as f64;
    let (a, b, c) = (mean(0), mean(1), mean(2));
    let var = c - b * b;
    if !(var >= 1e-12) {
        return Err(Error::DegenerateFunction(format!("empirical variance {var:e} below 1e-12")));
    }
    let ratio = a / var;
    let grad = [1.0 / var, 2.0 * a * b / (var * var), -a / (var * var)];
    let lin: Vec<f64> = sums
        .iter()
        .map(|s| grad[0] * (s[0] - a) + grad[1] * (s[1] - b) + grad[2] * (s[2] - c))
        .collect();
    let s2 = lin.iter().map(|l| l * l).sum::<f64>() / (BATCHES - 1) as f64;
    let half = Z95 * (s2 / BATCHES as f64).sqrt();
    if !ratio.is_finite() || !half.is_finite() {
        return Err(Error::DomainError("Rayleigh estimate is not finite".into()));
    }
    Ok(RayleighResult { ratio, ci_half_width: half, batches: BATCHES })
}
