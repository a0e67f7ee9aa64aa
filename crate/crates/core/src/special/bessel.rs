//! Modified Bessel function of the first kind for real order and argument.
//!
//! Two evaluation routes, both in log domain:
//!
//! * a power series summed outward from its largest term, with the pivot
//!   term built from two accurate Poisson-type prefactors so no `ln Γ` of a
//!   large argument is ever subtracted from another;
//! * the Hankel large-argument expansion once `z` dominates `ν²`.
//!
//! All series terms are positive, so the series route is stable for every
//! argument; it costs `O(√z)` terms.

use super::gamma::log_power_prefactor;
use crate::error::{domain, Result};

const SERIES_EPS: f64 = 1e-17;

fn check(nu: f64, z: f64) -> Result<()> {
    if !(nu >= 0.0) || !nu.is_finite() {
        return domain(format!(
            "Bessel order must be non-negative and finite, got {nu}"
        ));
    }
    if !(z >= 0.0) {
        return domain(format!("Bessel argument must be non-negative, got {z}"));
    }
    Ok(())
}

/// `I_ν(z)`. Overflows to `+∞` beyond `z ≈ 713`; use [`log_bessel_i`] there.
pub fn bessel_i(nu: f64, z: f64) -> Result<f64> {
    log_bessel_i(nu, z).map(f64::exp)
}

/// `ln I_ν(z)`.
pub fn log_bessel_i(nu: f64, z: f64) -> Result<f64> {
    check(nu, z)?;
    if z == 0.0 {
        return Ok(if nu == 0.0 { 0.0 } else { f64::NEG_INFINITY });
    }
    if z.is_infinite() {
        return Ok(f64::INFINITY);
    }
    if z >= 50.0 && z >= 25.0 * (nu * nu + 1.0) {
        Ok(log_hankel(nu, z))
    } else {
        Ok(log_series(nu, z))
    }
}

fn log_series(nu: f64, z: f64) -> f64 {
    let h = 0.5 * z;
    let h2 = h * h;
    // largest term: (k+1)(k+ν+1) ≈ h²
    let pivot = ((nu * nu + z * z).sqrt() - nu) * 0.5;
    let kp = pivot.floor().max(0.0);

    // ln[h^(2k+ν) / (k! Γ(k+ν+1))] = two prefactors plus 2h
    let log_pivot = log_power_prefactor(kp, h) + log_power_prefactor(kp + nu, h) + z;

    let mut sum = 1.0;
    let mut rel = 1.0;
    let mut k = kp;
    loop {
        rel *= h2 / ((k + 1.0) * (k + nu + 1.0));
        sum += rel;
        k += 1.0;
        if rel < SERIES_EPS * sum {
            break;
        }
    }
    rel = 1.0;
    k = kp;
    while k >= 1.0 {
        rel *= k * (k + nu) / h2;
        sum += rel;
        k -= 1.0;
        if rel < SERIES_EPS * sum {
            break;
        }
    }
    log_pivot + sum.ln()
}

fn log_hankel(nu: f64, z: f64) -> f64 {
    let mu = 4.0 * nu * nu;
    let mut term = 1.0;
    let mut sum = 1.0;
    for k in 1..60 {
        let odd = (2 * k - 1) as f64;
        let next = -term * (mu - odd * odd) / (8.0 * k as f64 * z);
        if next.abs() > term.abs() {
            break;
        }
        term = next;
        sum += term;
        if term.abs() < SERIES_EPS * sum.abs() {
            break;
        }
    }
    z - 0.5 * (2.0 * std::f64::consts::PI * z).ln() + sum.ln()
}
