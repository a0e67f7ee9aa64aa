use rayon::prelude::*;
use serde::Serialize;

use crate::channel::GainDistribution;
use crate::error::Result;
use crate::metrics::DkwBound;

/// Sorted Monte Carlo gains with a right-continuous empirical CDF.
#[derive(Debug, Clone, PartialEq)]
pub struct EcdfResult {
    sorted_gains: Vec<f64>,
}

impl EcdfResult {
    /// Sorts the samples. NaNs are not expected from the sampler and sort last.
    pub fn from_samples(mut samples: Vec<f64>) -> Self {
        samples.par_sort_unstable_by(f64::total_cmp);
        EcdfResult {
            sorted_gains: samples,
        }
    }

    pub(crate) fn from_sorted_unchecked(sorted_gains: Vec<f64>) -> Self {
        EcdfResult { sorted_gains }
    }

    pub fn sorted_gains(&self) -> &[f64] {
        &self.sorted_gains
    }

    /// Sample count `R`.
    pub fn r(&self) -> usize {
        self.sorted_gains.len()
    }

    /// `#{samples ≤ q} / R`.
    pub fn evaluate(&self, q: f64) -> f64 {
        if self.sorted_gains.is_empty() {
            return 0.0;
        }
        let below = self.sorted_gains.partition_point(|&g| g <= q);
        below as f64 / self.r() as f64
    }

    pub fn mean(&self) -> f64 {
        self.sorted_gains.par_iter().sum::<f64>() / self.r() as f64
    }

    /// DKW confidence band around this ECDF.
    pub fn dkw_band(&self, xi: f64) -> Result<DkwBand<'_>> {
        Ok(DkwBand {
            ecdf: self,
            bound: DkwBound::new(self.r() as u64, xi)?,
        })
    }
}

pub fn ecdf_evaluate(ecdf: &EcdfResult, q: f64) -> f64 {
    ecdf.evaluate(q)
}

/// ECDF ± ε, clipped to `[0, 1]`.
#[derive(Debug, Clone, Copy)]
pub struct DkwBand<'a> {
    ecdf: &'a EcdfResult,
    bound: DkwBound,
}

impl DkwBand<'_> {
    pub fn epsilon(&self) -> f64 {
        self.bound.epsilon
    }

    pub fn bound(&self) -> DkwBound {
        self.bound
    }

    pub fn lower(&self, q: f64) -> f64 {
        (self.ecdf.evaluate(q) - self.bound.epsilon).max(0.0)
    }

    pub fn upper(&self, q: f64) -> f64 {
        (self.ecdf.evaluate(q) + self.bound.epsilon).min(1.0)
    }

    pub fn bounds(&self, q: f64) -> (f64, f64) {
        (self.lower(q), self.upper(q))
    }
}

/// Outcome of checking an ECDF against an analytic CDF.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct BandCheck {
    pub epsilon: f64,
    /// Upper bound on `sup_q |ECDF(q) − F(q)|` over every sample point.
    pub sup_deviation: f64,
    /// Every `stride`-th sample was evaluated exactly.
    pub stride: usize,
    pub inside: bool,
}

/// Rigorous upper bound on the Kolmogorov distance between `ecdf` and `cdf`.
///
/// `cdf` is evaluated at every `stride`-th order statistic (and the last).
/// Between two evaluated points `F` is bracketed by its endpoint values and
/// the ECDF by its endpoint steps, so the bound covers all samples; with
/// `stride = 1` it exceeds the exact distance by at most one step.
pub fn sup_deviation_bound<F>(ecdf: &EcdfResult, cdf: F, stride: usize) -> Result<f64>
where
    F: Fn(f64) -> Result<f64> + Sync,
{
    let n = ecdf.r();
    let xs = ecdf.sorted_gains();
    if n == 0 {
        return Ok(0.0);
    }
    let stride = stride.max(1);
    let mut grid: Vec<usize> = (0..n).step_by(stride).collect();
    if *grid.last().unwrap() != n - 1 {
        grid.push(n - 1);
    }
    let values: Vec<f64> = grid
        .par_iter()
        .map(|&i| cdf(xs[i]))
        .collect::<Result<_>>()?;
    let nf = n as f64;
    let mut sup: f64 = 0.0;
    // exact at the evaluated points themselves
    for (&i, &f) in grid.iter().zip(&values) {
        sup = sup.max((i + 1) as f64 / nf - f).max(f - i as f64 / nf);
    }
    for w in 0..grid.len().saturating_sub(1) {
        let (lo, hi) = (grid[w], grid[w + 1]);
        let (f_lo, f_hi) = (values[w], values[w + 1]);
        sup = sup
            .max((hi + 1) as f64 / nf - f_lo)
            .max(f_hi - lo as f64 / nf);
    }
    Ok(sup)
}

/// Checks that the analytic CDF of `dist` lies inside the `xi` DKW band,
/// evaluating at most about 200k analytic points.
pub fn check_band(ecdf: &EcdfResult, dist: &GainDistribution, xi: f64) -> Result<BandCheck> {
    let epsilon = DkwBound::new(ecdf.r() as u64, xi)?.epsilon;
    let stride = (ecdf.r() / 200_000).max(1);
    let sup_deviation = sup_deviation_bound(ecdf, |q| dist.cdf(q), stride)?;
    Ok(BandCheck {
        epsilon,
        sup_deviation,
        stride,
        inside: sup_deviation <= epsilon,
    })
}
