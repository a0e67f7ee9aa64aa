//! Regularized lower incomplete gamma function and the stable power/exponential
//! prefactor shared with the Poisson weights of the Marcum mixture.

use crate::error::{domain, Error, Result};

const LN_2PI: f64 = 1.837_877_066_409_345_5;

/// Relative size below which series terms are dropped.
const SERIES_EPS: f64 = 1e-17;
const MAX_ITER: usize = 1_000_000;

/// `ln Γ(a)` for `a > 0`.
#[inline]
pub fn ln_gamma(a: f64) -> f64 {
    libm::lgamma(a)
}

/// Stirling remainder `ln Γ(a+1) − (a + ½) ln a + a − ½ ln 2π`.
fn stirling_remainder(a: f64) -> f64 {
    if a < 15.0 {
        return ln_gamma(a + 1.0) - (a + 0.5) * a.ln() + a - 0.5 * LN_2PI;
    }
    let inv = 1.0 / a;
    let inv2 = inv * inv;
    inv * (1.0 / 12.0
        - inv2 * (1.0 / 360.0 - inv2 * (1.0 / 1260.0 - inv2 * (1.0 / 1680.0 - inv2 / 1188.0))))
}

/// `a ln y − y − ln Γ(a+1)`, i.e. the log of `y^a e^{−y} / Γ(a+1)`.
///
/// For integer `a` this is the log Poisson probability of `a` events at rate
/// `y`. The large-`a` branch factors out Stirling's approximation so the huge
/// `a ln y` and `ln Γ(a+1)` terms never cancel against each other.
pub fn log_power_prefactor(a: f64, y: f64) -> f64 {
    if y == 0.0 {
        return if a == 0.0 { 0.0 } else { f64::NEG_INFINITY };
    }
    if a < 15.0 {
        return a * y.ln() - y - ln_gamma(a + 1.0);
    }
    let t = (y - a) / a;
    let core = if t.abs() < 0.5 {
        a * (t.ln_1p() - t)
    } else {
        a * (y / a).ln() + a - y
    };
    core - 0.5 * (LN_2PI + a.ln()) - stirling_remainder(a)
}

fn check_args(a: f64, y: f64) -> Result<()> {
    if !(a > 0.0) || !a.is_finite() {
        return domain(format!(
            "incomplete gamma order must be positive and finite, got {a}"
        ));
    }
    if !(y >= 0.0) {
        return domain(format!(
            "incomplete gamma argument must be non-negative, got {y}"
        ));
    }
    Ok(())
}

/// `Σ_{n≥0} y^n / ((a+1)…(a+n))`, the series factor of `P(a, y)`.
fn lower_series(a: f64, y: f64) -> Result<f64> {
    let mut term = 1.0;
    let mut sum = 1.0;
    let mut denom = a;
    for _ in 0..MAX_ITER {
        denom += 1.0;
        term *= y / denom;
        sum += term;
        if term < sum * SERIES_EPS {
            return Ok(sum);
        }
    }
    Err(Error::Convergence {
        what: "incomplete gamma series",
        iterations: MAX_ITER,
    })
}

/// Upper regularized gamma `Q(a, y)` by modified Lentz evaluation of the
/// Legendre continued fraction. Only used for `y ≥ a + 1`.
fn upper_continued_fraction(a: f64, y: f64) -> Result<f64> {
    const TINY: f64 = 1e-300;
    let mut b = y + 1.0 - a;
    let mut c = 1.0 / TINY;
    let mut d = 1.0 / b;
    let mut h = d;
    for i in 1..MAX_ITER {
        let an = -(i as f64) * (i as f64 - a);
        b += 2.0;
        d = an * d + b;
        if d.abs() < TINY {
            d = TINY;
        }
        c = b + an / c;
        if c.abs() < TINY {
            c = TINY;
        }
        d = 1.0 / d;
        let step = d * c;
        h *= step;
        if (step - 1.0).abs() < 1e-16 {
            let log_q = log_power_prefactor(a, y) + a.ln() + h.ln();
            return Ok(log_q.exp());
        }
    }
    Err(Error::Convergence {
        what: "incomplete gamma continued fraction",
        iterations: MAX_ITER,
    })
}

/// Regularized lower incomplete gamma function `P(a, y) = γ(a, y) / Γ(a)`.
pub fn reg_lower_gamma(a: f64, y: f64) -> Result<f64> {
    check_args(a, y)?;
    if y == 0.0 {
        return Ok(0.0);
    }
    if y.is_infinite() {
        return Ok(1.0);
    }
    if y < a + 1.0 {
        let s = lower_series(a, y)?;
        Ok((log_power_prefactor(a, y) + s.ln()).exp())
    } else {
        Ok(1.0 - upper_continued_fraction(a, y)?)
    }
}

/// Natural log of `P(a, y)`, finite far below the double underflow threshold.
pub fn log_reg_lower_gamma(a: f64, y: f64) -> Result<f64> {
    check_args(a, y)?;
    if y == 0.0 {
        return Ok(f64::NEG_INFINITY);
    }
    if y.is_infinite() {
        return Ok(0.0);
    }
    if y < a + 1.0 {
        let s = lower_series(a, y)?;
        Ok(log_power_prefactor(a, y) + s.ln())
    } else {
        Ok((-upper_continued_fraction(a, y)?).ln_1p())
    }
}
