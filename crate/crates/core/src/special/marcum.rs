//! Complementary Marcum-Q function
//!
//! ```text
//! P_μ(x, y) = x^{(1−μ)/2} ∫₀^y t^{(μ−1)/2} e^{−t−x} I_{μ−1}(2√(xt)) dt
//! ```
//!
//! which is the CDF at `y` of a unit-scale non-central gamma law with index
//! `μ` and non-centrality `x`. Note the arguments are `x` and `y` directly,
//! not the `a = √(2x)`, `b = √(2y)` of the classic `Q_M(a, b)`; in that
//! notation `P_μ(x, y) = 1 − Q_μ(√(2x), √(2y))`.
//!
//! Evaluation uses the Poisson mixture
//!
//! ```text
//! P_μ(x, y) = Σ_k e^{−x} x^k / k! · P(μ + k, y)
//! ```
//!
//! entirely in log domain. The sum is walked downward from the upper edge of
//! the Poisson window so the gamma terms can be advanced with the stable
//! recurrence `P(a−1, y) = P(a, y) + y^{a−1} e^{−y} / Γ(a)` (all additions of
//! positive quantities). Terms are unimodal in `k`; summation stops once the
//! walk is past the peak and a term drops below `e^{−40}` of the running sum.

use super::gamma::{log_power_prefactor, log_reg_lower_gamma, reg_lower_gamma};
use crate::error::{domain, Result};

/// `ln(1e-17)`, rounded down.
const LOG_TRUNCATION: f64 = -40.0;

/// Arguments of `P_μ(x, y)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MarcumArgs {
    /// Order; the antenna count in channel use.
    pub mu: f64,
    /// Non-centrality; the summed K-factors in channel use.
    pub x: f64,
    /// Upper integration limit; the gain scaled by the diffuse power.
    pub y: f64,
}

impl MarcumArgs {
    pub fn new(mu: f64, x: f64, y: f64) -> Result<Self> {
        let args = MarcumArgs { mu, x, y };
        args.validate()?;
        Ok(args)
    }

    fn validate(&self) -> Result<()> {
        if !(self.mu > 0.0) || !self.mu.is_finite() {
            return domain(format!(
                "Marcum order must be positive and finite, got {}",
                self.mu
            ));
        }
        if !(self.x >= 0.0) || !self.x.is_finite() {
            return domain(format!(
                "Marcum non-centrality must be finite and >= 0, got {}",
                self.x
            ));
        }
        if !(self.y >= 0.0) {
            return domain(format!("Marcum argument must be >= 0, got {}", self.y));
        }
        Ok(())
    }
}

#[inline]
pub(crate) fn log_add_exp(a: f64, b: f64) -> f64 {
    if a == f64::NEG_INFINITY {
        return b;
    }
    if b == f64::NEG_INFINITY {
        return a;
    }
    let (hi, lo) = if a > b { (a, b) } else { (b, a) };
    hi + (lo - hi).exp().ln_1p()
}

/// `P_μ(x, y)`. For `x = 0` this is exactly [`reg_lower_gamma`]`(μ, y)`.
pub fn marcum_p(args: MarcumArgs) -> Result<f64> {
    args.validate()?;
    if args.x == 0.0 {
        return reg_lower_gamma(args.mu, args.y);
    }
    Ok(log_mixture(args)?.exp())
}

/// `ln P_μ(x, y)`; `−∞` at `y = 0`.
pub fn marcum_p_log(args: MarcumArgs) -> Result<f64> {
    args.validate()?;
    if args.x == 0.0 {
        return log_reg_lower_gamma(args.mu, args.y);
    }
    log_mixture(args)
}

fn log_mixture(MarcumArgs { mu, x, y }: MarcumArgs) -> Result<f64> {
    if y == 0.0 {
        return Ok(f64::NEG_INFINITY);
    }
    if y.is_infinite() {
        return Ok(0.0);
    }
    let k_top = (x + 12.0 * x.sqrt() + 40.0).ceil();

    let mut log_gamma_term = log_reg_lower_gamma(mu + k_top, y)?;
    let mut acc = f64::NEG_INFINITY;
    let mut previous = f64::NEG_INFINITY;
    let mut k = k_top;
    loop {
        let term = log_power_prefactor(k, x) + log_gamma_term;
        acc = log_add_exp(acc, term);
        if term < previous && term < acc + LOG_TRUNCATION {
            break;
        }
        previous = term;
        if k == 0.0 {
            break;
        }
        k -= 1.0;
        log_gamma_term = log_add_exp(log_gamma_term, log_power_prefactor(mu + k, y));
    }
    // rounding can push a certain event a hair above zero
    Ok(acc.min(0.0))
}
