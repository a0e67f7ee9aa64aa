//! Reference implementations used only by the integration tests. None of
//! these share code with the library's special-function kernels.

#![allow(dead_code, clippy::neg_cmp_op_on_partial_ord)]

pub mod suites;

use rand_chacha::rand_core::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;
use statrs::function::gamma::{gamma_lr, gamma_ur, ln_gamma};

const XGK: [f64; 8] = [
    0.991_455_371_120_812_6,
    0.949_107_912_342_758_5,
    0.864_864_423_359_769_1,
    0.741_531_185_599_394_4,
    0.586_087_235_467_691_1,
    0.405_845_151_377_397_2,
    0.207_784_955_007_898_5,
    0.0,
];
const WGK: [f64; 8] = [
    0.022_935_322_010_529_22,
    0.063_092_092_629_978_55,
    0.104_790_010_322_250_2,
    0.140_653_259_715_525_9,
    0.169_004_726_639_267_9,
    0.190_350_578_064_785_4,
    0.204_432_940_075_298_9,
    0.209_482_141_084_728_8,
];
const WG: [f64; 4] = [
    0.129_484_966_168_869_7,
    0.279_705_391_489_276_7,
    0.381_830_050_505_118_9,
    0.417_959_183_673_469_4,
];

/// One 15-point Kronrod panel: (integral, |Kronrod − Gauss|).
fn gk15<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64) -> (f64, f64) {
    let c = 0.5 * (a + b);
    let h = 0.5 * (b - a);
    let fc = f(c);
    let mut k = WGK[7] * fc;
    let mut g = WG[3] * fc;
    for j in 0..7 {
        let x = h * XGK[j];
        let s = f(c - x) + f(c + x);
        k += WGK[j] * s;
        if j % 2 == 1 {
            g += WG[j / 2] * s;
        }
    }
    (k * h, ((k - g) * h).abs())
}

/// Globally adaptive Gauss–Kronrod quadrature on `[a, b]`, bisecting the
/// worst panel until the summed error estimate is below `rel_tol · |I|`.
pub fn integrate<F: Fn(f64) -> f64>(f: F, a: f64, b: f64, rel_tol: f64) -> f64 {
    let mut panels: Vec<(f64, f64, f64, f64)> = Vec::new();
    let n0 = 16;
    for i in 0..n0 {
        let lo = a + (b - a) * i as f64 / n0 as f64;
        let hi = a + (b - a) * (i + 1) as f64 / n0 as f64;
        let (v, e) = gk15(&f, lo, hi);
        panels.push((lo, hi, v, e));
    }
    for _ in 0..20_000 {
        let total: f64 = panels.iter().map(|p| p.2).sum();
        let err: f64 = panels.iter().map(|p| p.3).sum();
        if err <= rel_tol * total.abs() || err == 0.0 {
            return total;
        }
        let worst = panels
            .iter()
            .enumerate()
            .max_by(|x, y| x.1 .3.total_cmp(&y.1 .3))
            .map(|(i, _)| i)
            .unwrap();
        let (lo, hi, _, _) = panels.swap_remove(worst);
        let mid = 0.5 * (lo + hi);
        let (v1, e1) = gk15(&f, lo, mid);
        let (v2, e2) = gk15(&f, mid, hi);
        panels.push((lo, mid, v1, e1));
        panels.push((mid, hi, v2, e2));
    }
    panic!("quadrature did not converge on [{a}, {b}]");
}

fn log_sum_exp(terms: &[f64]) -> f64 {
    let m = terms.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    if m == f64::NEG_INFINITY {
        return m;
    }
    m + terms.iter().map(|t| (t - m).exp()).sum::<f64>().ln()
}

/// `ln I_ν(z)` by direct power series, for `ν ≥ 0` and moderate `z`.
pub fn log_bessel_i_series(nu: f64, z: f64) -> f64 {
    if z == 0.0 {
        return if nu == 0.0 { 0.0 } else { f64::NEG_INFINITY };
    }
    let lh = (0.5 * z).ln();
    let mut terms = Vec::new();
    let mut peak = f64::NEG_INFINITY;
    for k in 0.. {
        let kf = k as f64;
        let t = (2.0 * kf + nu) * lh - ln_gamma(kf + 1.0) - ln_gamma(kf + nu + 1.0);
        peak = peak.max(t);
        terms.push(t);
        if kf > 0.5 * z && t < peak - 45.0 {
            break;
        }
    }
    log_sum_exp(&terms)
}

/// Integrand of `P_μ(x, y) = ∫₀^y (t/x)^{(μ−1)/2} e^{−t−x} I_{μ−1}(2√(xt)) dt`.
pub fn marcum_integrand(mu: f64, x: f64, t: f64) -> f64 {
    if t <= 0.0 {
        return if mu == 1.0 { (-x).exp() } else { 0.0 };
    }
    let nu = mu - 1.0;
    let log_f =
        0.5 * nu * (t.ln() - x.ln()) - t - x + log_bessel_i_series(nu, 2.0 * (x * t).sqrt());
    log_f.exp()
}

/// Quadrature oracle for the complementary Marcum function, `x > 0`.
pub fn marcum_p_quadrature(mu: f64, x: f64, y: f64) -> f64 {
    integrate(|t| marcum_integrand(mu, x, t), 0.0, y, 1e-13)
}

/// Index window `[lo, hi]` holding all Poisson(x) mass above ~e^{-50}.
fn poisson_window(x: f64) -> (u64, u64) {
    let half = 12.0 * x.sqrt() + 250.0;
    ((x - half).max(0.0) as u64, (x + half).ceil() as u64)
}

fn log_poisson(k: u64, x: f64) -> f64 {
    let kf = k as f64;
    if x == 0.0 {
        return if k == 0 { 0.0 } else { f64::NEG_INFINITY };
    }
    kf * x.ln() - x - ln_gamma(kf + 1.0)
}

/// `Σ_k Poisson(k; x) · γ(μ+k, y)/Γ(μ+k)` with statrs incomplete gammas.
pub fn marcum_p_mixture(mu: f64, x: f64, y: f64) -> f64 {
    let (lo, hi) = poisson_window(x);
    (lo..=hi)
        .map(|k| log_poisson(k, x).exp() * gamma_lr(mu + k as f64, y))
        .sum()
}

/// Standard Marcum `Q_μ(√(2x), √(2y))` from the same mixture, using the
/// upper regularised gamma.
pub fn marcum_q_mixture(mu: f64, x: f64, y: f64) -> f64 {
    let (lo, hi) = poisson_window(x);
    (lo..=hi)
        .map(|k| log_poisson(k, x).exp() * gamma_ur(mu + k as f64, y))
        .sum()
}

/// `ln P(a, y)` by its own power series, valid far into underflow.
pub fn log_gamma_lr_series(a: f64, y: f64) -> f64 {
    // P(a,y) = y^a e^{-y} / Γ(a+1) · Σ_n y^n / ((a+1)…(a+n))
    let mut sum = 1.0;
    let mut term = 1.0;
    let mut n = 1.0;
    while term > sum * 1e-18 {
        term *= y / (a + n);
        sum += term;
        n += 1.0;
        assert!(n < 1e6, "series too slow for a={a}, y={y}");
    }
    a * y.ln() - y - ln_gamma(a + 1.0) + sum.ln()
}

/// Log-domain mixture over every index from 0 through the upper Poisson
/// window. For `y ≪ x` the dominant terms sit far below the Poisson mode,
/// so a window centred on the mode is not enough.
pub fn log_marcum_p_mixture_full(mu: f64, x: f64, y: f64) -> f64 {
    let (_, hi) = poisson_window(x);
    let terms: Vec<f64> = (0..=hi)
        .map(|k| log_poisson(k, x) + log_gamma_lr_series(mu + k as f64, y))
        .collect();
    log_sum_exp(&terms)
}

pub fn rel_err(got: f64, want: f64) -> f64 {
    if got == want {
        0.0
    } else {
        ((got - want) / want).abs()
    }
}

/// Deterministic uniform stream for sampling test parameters.
pub struct ParamRng(ChaCha8Rng);

impl ParamRng {
    pub fn new(seed: u64) -> Self {
        ParamRng(ChaCha8Rng::seed_from_u64(seed))
    }

    pub fn uniform(&mut self) -> f64 {
        (self.0.next_u64() >> 11) as f64 / (1u64 << 53) as f64
    }

    pub fn range(&mut self, lo: f64, hi: f64) -> f64 {
        lo + (hi - lo) * self.uniform()
    }

    pub fn log_range(&mut self, lo: f64, hi: f64) -> f64 {
        (lo.ln() + (hi.ln() - lo.ln()) * self.uniform()).exp()
    }
}
