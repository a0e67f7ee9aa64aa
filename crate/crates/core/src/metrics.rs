//! Reliability metrics of an effective-gain distribution.
//!
//! The local diversity `D(Q) = Q f(Q) / F(Q)` is the log-log slope of the
//! outage CDF at `Q`; it tends to the antenna count `M` as `Q → 0` and
//! tells how far a classic tail approximation is from the true steepness at
//! a probability of interest. The fading margin is the dB gap between the
//! median gain and the gain at a target outage probability.

use serde::Serialize;

use crate::channel::GainDistribution;
use crate::error::{domain, Error, Result};
use crate::special::{marcum_p_log, MarcumArgs};

/// Local diversity evaluated at one point of the distribution.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct LocalDiversityPoint {
    pub q: f64,
    pub p: f64,
    pub d: f64,
    pub d_norm: f64,
}

fn check_gain(q: f64) -> Result<()> {
    if !(q > 0.0) || !q.is_finite() {
        return domain(format!(
            "local diversity needs a positive finite gain, got {q}"
        ));
    }
    Ok(())
}

/// `q · pdf(q) / cdf(q)`, computed as `q · exp(ln pdf − ln cdf)`.
pub fn local_diversity(dist: &GainDistribution, q: f64) -> Result<f64> {
    check_gain(q)?;
    let log_ratio = dist.log_pdf(q)? - dist.log_cdf(q)?;
    if log_ratio.is_nan() {
        return Err(Error::PrecisionLoss(format!(
            "pdf/cdf ratio undefined at q={q}"
        )));
    }
    Ok(q * log_ratio.exp())
}

/// Marcum-ratio form `(q/P_dif)(P_{M−1}/P_M − 1)`, for `M ≥ 2`.
///
/// A cross-check of [`local_diversity`]; refuses to return a value when the
/// ratio is too close to one for the subtraction to keep six digits.
pub fn local_diversity_marcum(dist: &GainDistribution, q: f64) -> Result<f64> {
    check_gain(q)?;
    let m = dist.m();
    if m < 2 {
        return domain(format!(
            "Marcum-ratio local diversity needs M >= 2, got M={m}"
        ));
    }
    let y = q / dist.p_dif();
    let lower = marcum_p_log(MarcumArgs::new(m as f64 - 1.0, dist.k_sum(), y)?)?;
    let full = marcum_p_log(MarcumArgs::new(m as f64, dist.k_sum(), y)?)?;
    let diff = lower - full;
    // each log carries ~1e-12 absolute error; need 1e-6 relative on exp_m1
    if !(diff > 1e-6) {
        return Err(Error::PrecisionLoss(format!(
            "Marcum ratio cancels at q={q} (log ratio {diff:e})"
        )));
    }
    Ok(y * diff.exp_m1())
}

/// Local diversity at the gain whose outage probability is `p`.
pub fn local_diversity_at_probability(
    dist: &GainDistribution,
    p: f64,
) -> Result<LocalDiversityPoint> {
    let q = dist.quantile(p)?;
    let d = local_diversity(dist, q)?;
    Ok(LocalDiversityPoint {
        q,
        p,
        d,
        d_norm: d / dist.m() as f64,
    })
}

/// `10 log10(median / quantile(p_target))` in dB.
pub fn fading_margin(dist: &GainDistribution, p_target: f64) -> Result<f64> {
    if !(p_target > 0.0 && p_target < 0.5) {
        return domain(format!(
            "fading margin target must lie in (0, 0.5), got {p_target}"
        ));
    }
    let median = dist.median()?;
    let q = dist.quantile(p_target)?;
    Ok(10.0 * (median / q).log10())
}

/// Dvoretzky–Kiefer–Wolfowitz band half-width for an `r`-sample ECDF at
/// confidence `xi`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct DkwBound {
    pub r: u64,
    pub xi: f64,
    pub epsilon: f64,
}

impl DkwBound {
    pub fn new(r: u64, xi: f64) -> Result<Self> {
        Ok(DkwBound {
            r,
            xi,
            epsilon: dkw_epsilon(r, xi)?,
        })
    }
}

/// `ε = sqrt(ln(2 / (1 − ξ)) / (2R))`.
pub fn dkw_epsilon(r: u64, xi: f64) -> Result<f64> {
    if r == 0 {
        return domain("DKW bound needs at least one sample");
    }
    if !(xi > 0.0 && xi < 1.0) {
        return domain(format!("DKW confidence must lie in (0, 1), got {xi}"));
    }
    Ok(((2.0 / (1.0 - xi)).ln() / (2.0 * r as f64)).sqrt())
}
