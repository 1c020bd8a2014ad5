//! Monte Carlo estimates of the quantum and classical timing widths.
//!
//! Random numbers come from ChaCha20 (`rand_chacha` 0.9) seeded with
//! `seed_from_u64(seed)`. Work is split into fixed-size shards; shard `i`
//! uses ChaCha stream `i`, so results do not depend on how many threads run
//! them. Normal variates use the Box–Muller transform on 53-bit uniforms,
//! two variates per pair of draws, with no rejection step.

use std::f64::consts::TAU;

use rand_chacha::ChaCha20Rng;
use rand_core::{RngCore, SeedableRng};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::distributions::TimingDistribution;
use crate::error::{Error, Result};

pub const MIN_SAMPLES: usize = 100;

/// Samples (or trials) per shard.
pub const SHARD_SIZE: usize = 4096;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct SamplerConfig {
    pub seed: u64,
    pub n_samples: usize,
    /// Photons per arm; used by the classical sampler.
    pub n_photons: u64,
}

impl SamplerConfig {
    pub fn new(seed: u64, n_samples: usize, n_photons: u64) -> Result<Self> {
        let cfg = Self {
            seed,
            n_samples,
            n_photons,
        };
        cfg.validate()?;
        Ok(cfg)
    }

    fn validate(&self) -> Result<()> {
        if self.n_samples < MIN_SAMPLES {
            return Err(Error::invalid(
                "n_samples",
                format!("need at least {MIN_SAMPLES} samples"),
            ));
        }
        if self.n_photons == 0 {
            return Err(Error::invalid("n_photons", "must be >= 1"));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct WidthEstimate {
    /// Sample standard deviation, fs.
    pub sigma_hat: f64,
    /// `σ̂ / √(2(n − 1))`, fs.
    pub standard_error: f64,
    pub n_samples: usize,
    /// Sample mean, fs.
    pub mean_hat: f64,
    /// `σ̂ / √n`, fs.
    pub mean_standard_error: f64,
}

/// Normal variates from one ChaCha stream.
pub struct GaussianStream {
    rng: ChaCha20Rng,
    spare: Option<f64>,
}

impl GaussianStream {
    pub fn new(seed: u64, stream: u64) -> Self {
        let mut rng = ChaCha20Rng::seed_from_u64(seed);
        rng.set_stream(stream);
        Self { rng, spare: None }
    }

    /// Uniform on (0, 1].
    fn open_uniform(&mut self) -> f64 {
        ((self.rng.next_u64() >> 11) + 1) as f64 * (1.0 / (1u64 << 53) as f64)
    }

    /// Standard normal variate.
    pub fn next_standard(&mut self) -> f64 {
        if let Some(z) = self.spare.take() {
            return z;
        }
        let radius = (-2.0 * self.open_uniform().ln()).sqrt();
        let angle = TAU * self.open_uniform();
        let (sin, cos) = angle.sin_cos();
        self.spare = Some(radius * sin);
        radius * cos
    }
}

/// Running mean and sum of squared deviations.
#[derive(Debug, Clone, Copy, Default)]
struct Accumulator {
    count: usize,
    mean: f64,
    m2: f64,
}

impl Accumulator {
    fn push(&mut self, x: f64) {
        self.count += 1;
        let delta = x - self.mean;
        self.mean += delta / self.count as f64;
        self.m2 += delta * (x - self.mean);
    }

    fn merge(self, other: Self) -> Self {
        if self.count == 0 {
            return other;
        }
        if other.count == 0 {
            return self;
        }
        let count = self.count + other.count;
        let delta = other.mean - self.mean;
        let mean = self.mean + delta * other.count as f64 / count as f64;
        let m2 = self.m2
            + other.m2
            + delta * delta * self.count as f64 * other.count as f64 / count as f64;
        Self { count, mean, m2 }
    }

    fn estimate(&self) -> WidthEstimate {
        let n = self.count as f64;
        let sigma_hat = (self.m2 / (n - 1.0)).sqrt();
        WidthEstimate {
            sigma_hat,
            standard_error: sigma_hat / (2.0 * (n - 1.0)).sqrt(),
            n_samples: self.count,
            mean_hat: self.mean,
            mean_standard_error: sigma_hat / n.sqrt(),
        }
    }
}

/// Runs `draw` `n` times across shards and merges in shard order.
fn sharded<F>(seed: u64, n: usize, draw: F) -> WidthEstimate
where
    F: Fn(&mut GaussianStream) -> f64 + Sync,
{
    let shards = n.div_ceil(SHARD_SIZE);
    let partials: Vec<Accumulator> = (0..shards)
        .into_par_iter()
        .map(|shard| {
            let mut stream = GaussianStream::new(seed, shard as u64);
            let len = SHARD_SIZE.min(n - shard * SHARD_SIZE);
            let mut acc = Accumulator::default();
            for _ in 0..len {
                acc.push(draw(&mut stream));
            }
            acc
        })
        .collect();
    partials
        .into_iter()
        .fold(Accumulator::default(), Accumulator::merge)
        .estimate()
}

/// Draws the mean-time variable directly from its Gaussian law.
pub fn sample_quantum(dist: &TimingDistribution, cfg: &SamplerConfig) -> Result<WidthEstimate> {
    cfg.validate()?;
    if !(dist.sigma.is_finite() && dist.sigma > 0.0) {
        return Err(Error::invalid("sigma", "must be finite and > 0"));
    }
    let (mean, sigma) = (dist.mean, dist.sigma);
    Ok(sharded(cfg.seed, cfg.n_samples, |s| {
        mean + sigma * s.next_standard()
    }))
}

/// Each trial averages `n_photons` independent pair differences of width
/// `sigma_t`; returns the spread of the trial averages.
pub fn sample_classical(sigma_t: f64, cfg: &SamplerConfig) -> Result<WidthEstimate> {
    cfg.validate()?;
    if !(sigma_t.is_finite() && sigma_t > 0.0) {
        return Err(Error::invalid("sigma_t", "must be finite and > 0"));
    }
    let n = cfg.n_photons;
    Ok(sharded(cfg.seed, cfg.n_samples, |s| {
        let total: f64 = (0..n).map(|_| s.next_standard()).sum();
        sigma_t * total / n as f64
    }))
}

/// Least-squares slope of `ln y` against `ln x`.
pub fn log_log_slope(x: &[f64], y: &[f64]) -> Result<f64> {
    if x.len() != y.len() || x.len() < 2 {
        return Err(Error::invalid("x", "need at least two paired points"));
    }
    if x.iter().chain(y).any(|v| v.is_nan() || *v <= 0.0) {
        return Err(Error::invalid("x", "values must be positive"));
    }
    let lx: Vec<f64> = x.iter().map(|v| v.ln()).collect();
    let ly: Vec<f64> = y.iter().map(|v| v.ln()).collect();
    let n = lx.len() as f64;
    let mx = lx.iter().sum::<f64>() / n;
    let my = ly.iter().sum::<f64>() / n;
    let sxy: f64 = lx.iter().zip(&ly).map(|(a, b)| (a - mx) * (b - my)).sum();
    let sxx: f64 = lx.iter().map(|a| (a - mx).powi(2)).sum();
    if sxx == 0.0 {
        return Err(Error::invalid("x", "needs at least two distinct values"));
    }
    Ok(sxy / sxx)
}
