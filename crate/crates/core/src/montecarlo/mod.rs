//! Seeded Monte Carlo reproduction of the channel model.
//!
//! Gaussians come from Box–Muller on 53-bit uniforms drawn from ChaCha8, one
//! stream per block of [`BLOCK_LEN`] samples. The samples for a given
//! `(spec, phases, seed, n)` are therefore identical on every machine and for
//! every thread count. Samples are held in memory, capped at
//! [`DEFAULT_SAMPLE_CAP`] by default; the ~1e13 draws needed for a 1e-6
//! outage estimate at six-nines confidence are far out of reach, which is
//! the reason the analytic path exists.

mod dump;
mod ecdf;
mod sampler;

use std::f64::consts::TAU;

use rand_chacha::rand_core::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

pub use dump::{read_dump, write_dump, HEADER_LEN, MAGIC, VERSION};
pub use ecdf::{check_band, ecdf_evaluate, sup_deviation_bound, BandCheck, DkwBand, EcdfResult};
pub use sampler::{sample_effective_gains, SamplerConfig, BLOCK_LEN, DEFAULT_SAMPLE_CAP};

use crate::channel::{ChannelSpec, GainDistribution};
use crate::error::Result;
use crate::metrics::dkw_epsilon;

/// Result of comparing ECDFs drawn with zero and with random phases.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct PhaseReport {
    pub max_deviation: f64,
    pub tolerance: f64,
    pub passed: bool,
}

/// Pseudo-random phases in `[0, 2π)`, derived from `seed`.
pub fn random_phases(m: usize, seed: u64) -> Vec<f64> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x9e37_79b9_7f4a_7c15);
    (0..m)
        .map(|_| TAU * ((rng.next_u64() >> 11) as f64 / (1u64 << 53) as f64))
        .collect()
}

/// Samples the gain twice, once with all-zero deterministic phases and once
/// with random ones, and compares the ECDFs at 100 analytic quantiles. The
/// MRC gain depends only on `|h_m|²`, so the two laws must coincide.
pub fn phase_invariance_check(spec: &ChannelSpec, seed: u64, n: usize) -> Result<PhaseReport> {
    let zero = SamplerConfig::new(spec.clone(), seed, n);
    let shifted = zero.clone().with_phases(random_phases(spec.m(), seed));
    let a = sample_effective_gains(&zero)?;
    let b = sample_effective_gains(&shifted)?;
    let dist = GainDistribution::new(spec.clone());
    let mut max_deviation: f64 = 0.0;
    for i in 0..100 {
        let q = dist.quantile((i as f64 + 0.5) / 100.0)?;
        max_deviation = max_deviation.max((a.evaluate(q) - b.evaluate(q)).abs());
    }
    let tolerance = 2.0 * dkw_epsilon(n as u64, 0.99)?;
    Ok(PhaseReport {
        max_deviation,
        tolerance,
        passed: max_deviation <= tolerance,
    })
}
