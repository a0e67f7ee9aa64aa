use super::format::fmt6;
use super::registry::{default_gain_grid, Grid};
use crate::channel::{ChannelSpec, GainDistribution};
use crate::error::Result;
use crate::montecarlo::{sample_effective_gains, SamplerConfig};

/// Inputs of the ECDF error-floor demonstration.
#[derive(Debug, Clone)]
pub struct DkwDemo {
    pub r: usize,
    pub xi: f64,
    pub seed: u64,
    pub spec: ChannelSpec,
    /// Gain axis in dB.
    pub grid: Grid,
}

impl DkwDemo {
    /// One million single-antenna Rayleigh samples at 99 % confidence.
    pub fn new(r: usize, xi: f64, seed: u64) -> Result<Self> {
        Ok(DkwDemo {
            r,
            xi,
            seed,
            spec: ChannelSpec::uniform(1.0, 0.0, 1)?,
            grid: default_gain_grid(),
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DkwRow {
    pub gain_db: f64,
    pub analytic_cdf: f64,
    pub ecdf: f64,
    pub upper_bound: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct DkwDemoResult {
    pub epsilon: f64,
    pub rows: Vec<DkwRow>,
}

impl DkwDemoResult {
    pub fn to_csv(&self) -> String {
        let mut out = String::from("gain_db,analytic_cdf,ecdf,upper_bound\n");
        for r in &self.rows {
            out.push_str(&format!(
                "{},{},{},{}\n",
                fmt6(r.gain_db),
                fmt6(r.analytic_cdf),
                fmt6(r.ecdf),
                fmt6(r.upper_bound)
            ));
        }
        out
    }
}

/// Samples `r` gains and tabulates the analytic CDF, the ECDF and the DKW
/// upper bound, which floors at ε below the smallest sample.
pub fn cmd_dkw_demo(demo: &DkwDemo) -> Result<DkwDemoResult> {
    let dist = GainDistribution::new(demo.spec.clone());
    let ecdf = sample_effective_gains(&SamplerConfig::new(demo.spec.clone(), demo.seed, demo.r))?;
    let band = ecdf.dkw_band(demo.xi)?;
    let rows = demo
        .grid
        .points()?
        .into_iter()
        .map(|x| {
            let q = 10f64.powf(x / 10.0);
            Ok(DkwRow {
                gain_db: x,
                analytic_cdf: dist.cdf(q)?,
                ecdf: ecdf.evaluate(q),
                upper_bound: band.upper(q),
            })
        })
        .collect::<Result<_>>()?;
    Ok(DkwDemoResult {
        epsilon: band.epsilon(),
        rows,
    })
}
