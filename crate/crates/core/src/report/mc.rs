use serde::Serialize;

use super::format::round6;
use crate::channel::{ChannelSpec, GainDistribution};
use crate::error::Result;
use crate::montecarlo::{check_band, sample_effective_gains, EcdfResult, SamplerConfig};

/// Summary of one seeded sampling run against the analytic model.
#[derive(Debug, Clone, Serialize)]
pub struct MonteCarloReport {
    pub schema: u32,
    pub m: usize,
    pub k_sum: f64,
    pub p_dif: f64,
    pub seed: u64,
    pub n: usize,
    pub sample_mean: f64,
    pub mean_gain: f64,
    /// Standard error of the sample mean, from the non-central gamma
    /// variance `Σ (2 K_m + 1) P_dif²`.
    pub standard_error: f64,
    pub dkw_xi: f64,
    pub dkw_epsilon: f64,
    pub sup_deviation: f64,
    pub inside_band: bool,
}

impl MonteCarloReport {
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serialises");
        s.push('\n');
        s
    }
}

/// Variance of the MRC gain.
pub fn gain_variance(spec: &ChannelSpec) -> f64 {
    let p2 = spec.p_dif() * spec.p_dif();
    spec.k_factors().iter().map(|k| (2.0 * k + 1.0) * p2).sum()
}

/// Samples, validates against the analytic CDF, and returns the ECDF too so
/// callers can dump it.
pub fn cmd_mc(config: &SamplerConfig, xi: f64) -> Result<(MonteCarloReport, EcdfResult)> {
    let ecdf = sample_effective_gains(config)?;
    let dist = GainDistribution::new(config.spec.clone());
    let band = check_band(&ecdf, &dist, xi)?;
    let n = ecdf.r();
    let report = MonteCarloReport {
        schema: super::scenario::SCHEMA_VERSION,
        m: dist.m(),
        k_sum: round6(dist.k_sum()),
        p_dif: round6(dist.p_dif()),
        seed: config.seed,
        n,
        sample_mean: round6(ecdf.mean()),
        mean_gain: round6(dist.mean()),
        standard_error: round6((gain_variance(&config.spec) / n as f64).sqrt()),
        dkw_xi: xi,
        dkw_epsilon: round6(band.epsilon),
        sup_deviation: round6(band.sup_deviation),
        inside_band: band.inside,
    };
    Ok((report, ecdf))
}
