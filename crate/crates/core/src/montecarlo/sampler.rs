use std::f64::consts::TAU;

use rand_chacha::rand_core::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::ecdf::EcdfResult;
use crate::channel::ChannelSpec;
use crate::error::{domain, Error, Result};

/// Samples per generator block. Block `b` always draws from ChaCha8 stream
/// `b` of the configured seed, so the sample multiset does not depend on how
/// blocks are spread over worker threads.
pub const BLOCK_LEN: usize = 1 << 16;

/// Default in-memory sample cap.
pub const DEFAULT_SAMPLE_CAP: usize = 100_000_000;

/// Configuration of one seeded Monte Carlo run.
#[derive(Debug, Clone, PartialEq)]
pub struct SamplerConfig {
    pub spec: ChannelSpec,
    /// Phases of the deterministic components, one per antenna.
    pub phases: Vec<f64>,
    pub seed: u64,
    pub n_samples: usize,
    /// Worker threads; each owns the generators of the blocks it draws.
    pub n_streams: usize,
    pub sample_cap: usize,
}

impl SamplerConfig {
    /// All-zero phases, one stream per available core.
    pub fn new(spec: ChannelSpec, seed: u64, n_samples: usize) -> Self {
        let m = spec.m();
        let n_streams = std::thread::available_parallelism().map_or(1, |n| n.get());
        SamplerConfig {
            spec,
            phases: vec![0.0; m],
            seed,
            n_samples,
            n_streams,
            sample_cap: DEFAULT_SAMPLE_CAP,
        }
    }

    pub fn with_phases(mut self, phases: Vec<f64>) -> Self {
        self.phases = phases;
        self
    }

    pub fn with_streams(mut self, n_streams: usize) -> Self {
        self.n_streams = n_streams;
        self
    }

    pub fn with_sample_cap(mut self, cap: usize) -> Self {
        self.sample_cap = cap;
        self
    }

    fn validate(&self) -> Result<()> {
        if self.phases.len() != self.spec.m() {
            return domain(format!(
                "expected {} phases, got {}",
                self.spec.m(),
                self.phases.len()
            ));
        }
        if let Some(phi) = self.phases.iter().find(|p| !p.is_finite()) {
            return domain(format!("phases must be finite, got {phi}"));
        }
        if self.n_samples == 0 {
            return domain("at least one sample is required");
        }
        if self.n_streams == 0 {
            return domain("at least one stream is required");
        }
        if self.n_samples > self.sample_cap {
            return Err(Error::Resource(format!(
                "{} samples exceed the in-memory cap of {}",
                self.n_samples, self.sample_cap
            )));
        }
        Ok(())
    }
}

#[inline]
fn uniform53(rng: &mut ChaCha8Rng) -> f64 {
    (rng.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
}

/// Box–Muller pair of independent standard normals.
#[inline]
fn gaussian_pair(rng: &mut ChaCha8Rng) -> (f64, f64) {
    let u1 = 1.0 - uniform53(rng);
    let u2 = uniform53(rng);
    let r = (-2.0 * u1.ln()).sqrt();
    let (s, c) = (TAU * u2).sin_cos();
    (r * c, r * s)
}

struct Branch {
    mean_re: f64,
    mean_im: f64,
}

fn fill_block(out: &mut [f64], block: usize, seed: u64, branches: &[Branch], sigma: f64) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(block as u64);
    for slot in out.iter_mut() {
        let mut gain = 0.0;
        for b in branches {
            let (g_re, g_im) = gaussian_pair(&mut rng);
            let re = b.mean_re + sigma * g_re;
            let im = b.mean_im + sigma * g_im;
            gain += re * re + im * im;
        }
        *slot = gain;
    }
}

/// Draws `n_samples` channel vectors `h ~ CN(√(K_m P_dif) e^{jφ_m}, P_dif I)`
/// and returns the sorted MRC gains `Σ |h_m|²`.
pub fn sample_effective_gains(config: &SamplerConfig) -> Result<EcdfResult> {
    config.validate()?;
    let p_dif = config.spec.p_dif();
    // total variance P_dif per complex component
    let sigma = (0.5 * p_dif).sqrt();
    let branches: Vec<Branch> = config
        .spec
        .k_factors()
        .iter()
        .zip(&config.phases)
        .map(|(&k, &phi)| {
            let amp = (k * p_dif).sqrt();
            Branch {
                mean_re: amp * phi.cos(),
                mean_im: amp * phi.sin(),
            }
        })
        .collect();

    let mut gains = vec![0.0; config.n_samples];
    let workers = config.n_streams.min(config.n_samples.div_ceil(BLOCK_LEN));
    let mut buckets: Vec<Vec<(usize, &mut [f64])>> = (0..workers).map(|_| Vec::new()).collect();
    for (block, chunk) in gains.chunks_mut(BLOCK_LEN).enumerate() {
        buckets[block % workers].push((block, chunk));
    }
    std::thread::scope(|scope| {
        for bucket in buckets {
            let branches = &branches;
            scope.spawn(move || {
                for (block, chunk) in bucket {
                    fill_block(chunk, block, config.seed, branches, sigma);
                }
            });
        }
    });
    Ok(EcdfResult::from_samples(gains))
}
