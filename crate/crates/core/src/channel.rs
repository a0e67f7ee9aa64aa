//! Uncorrelated multi-antenna Rician fading and the law of its MRC effective
//! power gain.
//!
//! With `M` independent branches of diffuse power `P_dif` and K-factors
//! `K_m`, the gain `Q = Σ |h_m|²` is non-central gamma distributed with index
//! `M`, scale `P_dif` and non-centrality `Σ K_m`, so
//! `F(Q) = P_M(Σ K_m, Q / P_dif)`.

use serde::{Deserialize, Serialize};

use crate::error::{domain, Error, Result};
use crate::special::{log_bessel_i, marcum_p, marcum_p_log, MarcumArgs};

/// Converts a power ratio in dB to linear scale. `-inf` maps to exactly 0.
pub fn db_to_linear(db: f64) -> f64 {
    if db == f64::NEG_INFINITY {
        0.0
    } else {
        10f64.powf(db / 10.0)
    }
}

/// Converts a linear power ratio to dB; 0 maps to `-inf`.
pub fn linear_to_db(linear: f64) -> f64 {
    10.0 * linear.log10()
}

/// One fading environment: diffuse power and per-antenna K-factors.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ChannelSpec {
    p_dif: f64,
    k_factors: Vec<f64>,
}

impl ChannelSpec {
    /// Per-antenna K-factors (linear), one entry per antenna.
    pub fn new(p_dif: f64, k_factors: Vec<f64>) -> Result<Self> {
        if !(p_dif > 0.0) || !p_dif.is_finite() {
            return domain(format!(
                "diffuse power must be positive and finite, got {p_dif}"
            ));
        }
        if k_factors.is_empty() {
            return domain("at least one antenna is required");
        }
        if let Some(k) = k_factors.iter().find(|k| !(**k >= 0.0) || !k.is_finite()) {
            return domain(format!("K-factors must be finite and >= 0, got {k}"));
        }
        Ok(ChannelSpec { p_dif, k_factors })
    }

    /// `m` antennas sharing the linear K-factor `k`.
    pub fn uniform(p_dif: f64, k: f64, m: usize) -> Result<Self> {
        Self::new(p_dif, vec![k; m])
    }

    /// `m` antennas sharing a K-factor given in dB (`-inf` is Rayleigh).
    pub fn uniform_db(p_dif: f64, k_db: f64, m: usize) -> Result<Self> {
        if k_db.is_nan() || k_db == f64::INFINITY {
            return domain(format!("K-factor in dB must be finite or -inf, got {k_db}"));
        }
        Self::uniform(p_dif, db_to_linear(k_db), m)
    }

    pub fn p_dif(&self) -> f64 {
        self.p_dif
    }

    pub fn k_factors(&self) -> &[f64] {
        &self.k_factors
    }

    /// Antenna count.
    pub fn m(&self) -> usize {
        self.k_factors.len()
    }

    pub fn k_sum(&self) -> f64 {
        self.k_factors.iter().sum()
    }

    pub fn with_p_dif(&self, p_dif: f64) -> Result<Self> {
        Self::new(p_dif, self.k_factors.clone())
    }
}

/// `E[Q] = Σ_m (K_m + 1) P_dif`.
pub fn mean_gain(spec: &ChannelSpec) -> f64 {
    spec.k_factors.iter().map(|k| (k + 1.0) * spec.p_dif).sum()
}

/// Effective-power-gain distribution of a [`ChannelSpec`] under MRC.
#[derive(Debug, Clone, PartialEq)]
pub struct GainDistribution {
    spec: ChannelSpec,
    k_sum: f64,
}

const QUANTILE_MAX_ITER: usize = 200;
const QUANTILE_LOG_TOL: f64 = 2e-11;

impl GainDistribution {
    pub fn new(spec: ChannelSpec) -> Self {
        let k_sum = spec.k_sum();
        GainDistribution { spec, k_sum }
    }

    pub fn spec(&self) -> &ChannelSpec {
        &self.spec
    }

    /// Marcum non-centrality `Σ K_m`.
    pub fn k_sum(&self) -> f64 {
        self.k_sum
    }

    pub fn m(&self) -> usize {
        self.spec.m()
    }

    pub fn p_dif(&self) -> f64 {
        self.spec.p_dif
    }

    pub fn mean(&self) -> f64 {
        mean_gain(&self.spec)
    }

    fn scaled(&self, q: f64) -> Result<f64> {
        if !(q >= 0.0) {
            return domain(format!("gain must be non-negative, got {q}"));
        }
        Ok(q / self.spec.p_dif)
    }

    fn marcum_args(&self, order: f64, q: f64) -> Result<MarcumArgs> {
        MarcumArgs::new(order, self.k_sum, self.scaled(q)?)
    }

    pub fn cdf(&self, q: f64) -> Result<f64> {
        marcum_p(self.marcum_args(self.m() as f64, q)?)
    }

    pub fn log_cdf(&self, q: f64) -> Result<f64> {
        marcum_p_log(self.marcum_args(self.m() as f64, q)?)
    }

    /// Log density of the non-central gamma law, evaluated directly rather
    /// than as a difference of two Marcum functions.
    pub fn log_pdf(&self, q: f64) -> Result<f64> {
        let y = self.scaled(q)?;
        let index = self.m() as f64;
        let order = index - 1.0;
        let log_scale = self.spec.p_dif.ln();
        let s = self.k_sum;
        if y.is_infinite() {
            return Ok(f64::NEG_INFINITY);
        }
        if y == 0.0 {
            return Ok(if self.m() == 1 {
                -log_scale - s
            } else {
                f64::NEG_INFINITY
            });
        }
        if s == 0.0 {
            // central gamma
            return Ok(order * y.ln() - y - crate::special::ln_gamma(index) - log_scale);
        }
        let bessel = log_bessel_i(order, 2.0 * (s * y).sqrt())?;
        Ok(-log_scale - y - s + 0.5 * order * (y / s).ln() + bessel)
    }

    pub fn pdf(&self, q: f64) -> Result<f64> {
        self.log_pdf(q).map(f64::exp)
    }

    pub fn median(&self) -> Result<f64> {
        self.quantile(0.5)
    }

    /// Gain `q` with `cdf(q) = p`, solved on `ln q` against the log CDF.
    pub fn quantile(&self, p: f64) -> Result<f64> {
        if !(p > 0.0 && p < 1.0) {
            return domain(format!("quantile probability must lie in (0, 1), got {p}"));
        }
        let target = p.ln();
        let f = |u: f64| -> Result<f64> { Ok(self.log_cdf(u.exp())? - target) };

        // the lower tail scales like q^M, so mean * p^(1/M) is a near bracket
        let start = (self.mean() * p.powf(1.0 / self.m() as f64)).ln();
        let step = std::f64::consts::LN_10;
        let (mut lo, mut hi) = (start, start);
        let mut f_lo = f(start)?;
        let mut f_hi = f_lo;
        let mut expansions = 0;
        while f_lo > 0.0 || f_hi < 0.0 {
            expansions += 1;
            if expansions > 700 {
                return Err(Error::Convergence {
                    what: "quantile bracketing",
                    iterations: 700,
                });
            }
            if f_lo > 0.0 {
                hi = lo;
                f_hi = f_lo;
                lo -= step;
                f_lo = f(lo)?;
            } else {
                lo = hi;
                f_lo = f_hi;
                hi += step;
                f_hi = f(hi)?;
            }
        }
        let u = brent(f, lo, hi, f_lo, f_hi)?;
        Ok(u.exp())
    }

    /// Rescales the diffuse power so the mean gain is one.
    pub fn normalize_unit_mean(&self) -> Result<GainDistribution> {
        let scale = self.mean();
        Ok(GainDistribution::new(
            self.spec.with_p_dif(self.spec.p_dif / scale)?,
        ))
    }
}

/// Brent's root finder on a sign-changing bracket, stopping once the
/// residual is below the log-CDF tolerance or the bracket collapses.
fn brent<F>(f: F, mut a: f64, mut b: f64, mut fa: f64, mut fb: f64) -> Result<f64>
where
    F: Fn(f64) -> Result<f64>,
{
    if fa == 0.0 {
        return Ok(a);
    }
    if fb == 0.0 {
        return Ok(b);
    }
    let mut c = a;
    let mut fc = fa;
    let mut d = b - a;
    let mut e = d;
    for _ in 0..QUANTILE_MAX_ITER {
        if fb.signum() == fc.signum() {
            c = a;
            fc = fa;
            d = b - a;
            e = d;
        }
        if fc.abs() < fb.abs() {
            a = b;
            b = c;
            c = a;
            fa = fb;
            fb = fc;
            fc = fa;
        }
        let tol = 2.0 * f64::EPSILON * b.abs().max(1.0);
        let m = 0.5 * (c - b);
        if fb.abs() <= QUANTILE_LOG_TOL || m.abs() <= tol {
            return Ok(b);
        }
        if e.abs() >= tol && fa.abs() > fb.abs() {
            let s = fb / fa;
            let (mut p, mut q) = if a == c {
                (2.0 * m * s, 1.0 - s)
            } else {
                let q = fa / fc;
                let r = fb / fc;
                (
                    s * (2.0 * m * q * (q - r) - (b - a) * (r - 1.0)),
                    (q - 1.0) * (r - 1.0) * (s - 1.0),
                )
            };
            if p > 0.0 {
                q = -q;
            } else {
                p = -p;
            }
            if 2.0 * p < (3.0 * m * q - (tol * q).abs()).min((e * q).abs()) {
                e = d;
                d = p / q;
            } else {
                d = m;
                e = m;
            }
        } else {
            d = m;
            e = m;
        }
        a = b;
        fa = fb;
        b += if d.abs() > tol { d } else { tol.copysign(m) };
        fb = f(b)?;
    }
    Err(Error::Convergence {
        what: "quantile search",
        iterations: QUANTILE_MAX_ITER,
    })
}

/// Selection-combining outage: the `m_branches`-th power of a single-antenna
/// element CDF (the maximum order statistic of i.i.d. branches).
pub fn sc_cdf(element: &GainDistribution, m_branches: usize, q: f64) -> Result<f64> {
    sc_log_cdf(element, m_branches, q).map(f64::exp)
}

pub fn sc_log_cdf(element: &GainDistribution, m_branches: usize, q: f64) -> Result<f64> {
    if element.m() != 1 {
        return domain(format!(
            "selection combining needs a single-antenna element, got M={}",
            element.m()
        ));
    }
    if m_branches == 0 {
        return domain("selection combining needs at least one branch");
    }
    Ok(m_branches as f64 * element.log_cdf(q)?)
}
