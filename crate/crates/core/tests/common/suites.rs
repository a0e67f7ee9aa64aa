//! Checks shared by the property tests and the acceptance harness. Each
//! returns the worst observed error, or a description of the first failure.

#![allow(dead_code)]

use urdiv_core::special::{marcum_p, MarcumArgs};
use urdiv_core::{fading_margin, local_diversity, ChannelSpec, GainDistribution};

use super::*;

pub type Outcome = std::result::Result<f64, String>;

fn p(mu: f64, x: f64, y: f64) -> f64 {
    marcum_p(MarcumArgs::new(mu, x, y).unwrap()).unwrap()
}

/// 50 random `(μ, x, y)` with `x·y ≤ 1e4` against quadrature of the
/// Bessel-form integrand.
pub fn quadrature_equivalence(tol: f64) -> Outcome {
    let mut rng = ParamRng::new(0x51ab);
    let mut worst: f64 = 0.0;
    for i in 0..50 {
        let mu = if i % 2 == 0 {
            (1 + (rng.uniform() * 12.0) as u32) as f64
        } else {
            rng.range(1.0, 12.0)
        };
        let x = rng.log_range(0.05, 100.0);
        let y = rng.log_range(0.05, 100.0);
        let got = p(mu, x, y);
        let want = marcum_p_quadrature(mu, x, y);
        let e = rel_err(got, want);
        if !(e <= tol) {
            return Err(format!(
                "P_{mu}({x}, {y}) = {got:e}, quadrature {want:e}, rel err {e:e}"
            ));
        }
        worst = worst.max(e);
    }
    Ok(worst)
}

pub fn mixture_grid() -> Vec<(f64, f64, f64)> {
    let mut cases = Vec::new();
    for mu in [1.0, 2.0, 4.0, 8.0] {
        for x in [0.5, 4.0, 40.0] {
            for i in 0..20 {
                let y = 10f64.powf(-2.0 + 4.0 * i as f64 / 19.0);
                cases.push((mu, x, y));
            }
        }
    }
    cases
}

/// The `μ × x × y` sweep against the statrs-based Poisson mixture.
pub fn mixture_equivalence(tol: f64) -> Outcome {
    let mut worst: f64 = 0.0;
    for (mu, x, y) in mixture_grid() {
        let got = p(mu, x, y);
        let want = marcum_p_mixture(mu, x, y);
        let e = rel_err(got, want);
        if !(e <= tol) {
            return Err(format!(
                "P_{mu}({x}, {y}) = {got:e}, mixture {want:e}, rel err {e:e}"
            ));
        }
        worst = worst.max(e);
    }
    Ok(worst)
}

/// `P_μ + Q_μ = 1` with `Q_μ` from the upper-gamma mixture.
pub fn complementarity(tol: f64) -> Outcome {
    let mut worst: f64 = 0.0;
    for (mu, x, y) in mixture_grid() {
        let e = (p(mu, x, y) + marcum_q_mixture(mu, x, y) - 1.0).abs();
        if !(e <= tol) {
            return Err(format!("P + Q − 1 = {e:e} at mu={mu}, x={x}, y={y}"));
        }
        worst = worst.max(e);
    }
    Ok(worst)
}

/// 20 random channels with `M ≤ 16`: `∫₀^q pdf = cdf(q)`, relative.
pub fn pdf_integrates_to_cdf(tol: f64) -> Outcome {
    let mut rng = ParamRng::new(0xcdf);
    let mut worst: f64 = 0.0;
    for i in 0..20 {
        let m = 1 + (rng.uniform() * 16.0) as usize;
        let k = if i % 5 == 0 {
            0.0
        } else {
            rng.log_range(0.01, 100.0)
        };
        let p_dif = rng.log_range(0.2, 5.0);
        let dist = GainDistribution::new(ChannelSpec::uniform(p_dif, k, m).unwrap());
        let q = dist.quantile(rng.log_range(1e-6, 0.9)).unwrap();
        let integral = integrate(|t| dist.pdf(t).unwrap(), 0.0, q, 1e-13);
        let cdf = dist.cdf(q).unwrap();
        let e = rel_err(integral, cdf);
        if !(e <= tol) {
            return Err(format!(
                "M={m}, K={k}, P_dif={p_dif}, q={q}: ∫pdf={integral:e}, cdf={cdf:e}"
            ));
        }
        worst = worst.max(e);
    }
    Ok(worst)
}

pub fn table_grid() -> Vec<(f64, usize)> {
    let mut out = Vec::new();
    for k_db in [f64::NEG_INFINITY, 0.0, 3.0, 6.0, 10.0, 20.0] {
        for m in [1, 2, 4, 8, 16, 32, 64, 128] {
            out.push((k_db, m));
        }
    }
    out
}

/// `cdf(quantile(p)) = p` across the table grid for `p` down to 1e-9.
pub fn quantile_round_trip(tol: f64) -> Outcome {
    let mut worst: f64 = 0.0;
    for (k_db, m) in table_grid() {
        let dist = GainDistribution::new(ChannelSpec::uniform_db(1.0, k_db, m).unwrap());
        for target in [1e-9, 1e-6, 1e-3, 0.5] {
            let q = dist.quantile(target).unwrap();
            let e = rel_err(dist.cdf(q).unwrap(), target);
            if !(e <= tol) {
                return Err(format!("K={k_db} dB, M={m}, p={target}: rel err {e:e}"));
            }
            worst = worst.max(e);
        }
    }
    Ok(worst)
}

/// `P_dif · pdf(q) = P_{M−1}(ΣK, q/P_dif) − P_M(ΣK, q/P_dif)`, absolute,
/// wherever both sides exceed 1e-280.
pub fn marcum_difference_identity(tol: f64) -> Outcome {
    let mut worst: f64 = 0.0;
    let mut checked = 0;
    for m in [2usize, 3, 4, 8, 16, 64, 128] {
        for k in [0.0, 0.5, 1.0, 4.0, 10.0, 100.0] {
            for p_dif in [0.5, 1.0, 3.0] {
                let spec = ChannelSpec::uniform(p_dif, k, m).unwrap();
                let dist = GainDistribution::new(spec);
                for j in 0..25 {
                    let y = dist.mean() / p_dif * 10f64.powf(-4.0 + 4.6 * j as f64 / 24.0);
                    let q = y * p_dif;
                    let lhs = p_dif * dist.pdf(q).unwrap();
                    let x = dist.k_sum();
                    let rhs = p(m as f64 - 1.0, x, y) - p(m as f64, x, y);
                    if !(lhs > 1e-280 && rhs > 1e-280) {
                        continue;
                    }
                    checked += 1;
                    let e = (lhs - rhs).abs();
                    if !(e <= tol) {
                        return Err(format!(
                            "M={m}, K={k}, P_dif={p_dif}, q={q}: {lhs:e} vs {rhs:e}"
                        ));
                    }
                    worst = worst.max(e);
                }
            }
        }
    }
    if checked < 1000 {
        return Err(format!("only {checked} representable points"));
    }
    Ok(worst)
}

/// Per-antenna K lists: uniform lists equal the uniform constructor
/// bit-for-bit, and lists with the same sum give the same CDF.
pub fn additivity() -> Outcome {
    for m in [1usize, 2, 7, 64] {
        for k in [0.0, 0.3, 1.0, std::f64::consts::PI, 100.0] {
            let list = ChannelSpec::new(1.5, vec![k; m]).unwrap();
            let uniform = ChannelSpec::uniform(1.5, k, m).unwrap();
            if list != uniform || list.k_sum().to_bits() != uniform.k_sum().to_bits() {
                return Err(format!(
                    "list and uniform constructors differ at K={k}, M={m}"
                ));
            }
            let a = GainDistribution::new(list);
            let b = GainDistribution::new(uniform);
            if a.k_sum().to_bits() != b.k_sum().to_bits()
                || a.m() != b.m()
                || a.p_dif() != b.p_dif()
            {
                return Err(format!("distribution parameters differ at K={k}, M={m}"));
            }
        }
    }
    let lists = [
        vec![2.0, 2.0, 2.0],
        vec![1.0, 2.0, 3.0],
        vec![0.0, 0.0, 6.0],
        vec![6.0, 0.0, 0.0],
    ];
    let dists: Vec<_> = lists
        .iter()
        .map(|l| GainDistribution::new(ChannelSpec::new(1.0, l.clone()).unwrap()))
        .collect();
    for q in [1e-3, 0.1, 1.0, 5.0, 20.0] {
        let base = dists[0].cdf(q).unwrap();
        for d in &dists[1..] {
            if d.cdf(q).unwrap().to_bits() != base.to_bits() {
                return Err(format!("equal-sum K lists disagree at q={q}"));
            }
        }
    }
    Ok(0.0)
}

/// Local diversity at fixed `q/P_dif` and fading margin at fixed `p` under
/// rescaling of `P_dif`.
pub fn scale_invariance(tol: f64) -> Outcome {
    let mut worst: f64 = 0.0;
    for (k_db, m) in [
        (f64::NEG_INFINITY, 1),
        (0.0, 4),
        (10.0, 2),
        (6.0, 32),
        (20.0, 128),
    ] {
        let base = GainDistribution::new(ChannelSpec::uniform_db(1.0, k_db, m).unwrap());
        let u = base.median().unwrap();
        let ld0 = local_diversity(&base, 0.1 * u).unwrap();
        let fm0 = fading_margin(&base, 1e-6).unwrap();
        for scale in [1e-3, 0.37, 250.0, 4e4] {
            let dist = GainDistribution::new(ChannelSpec::uniform_db(scale, k_db, m).unwrap());
            let e_ld = rel_err(local_diversity(&dist, 0.1 * u * scale).unwrap(), ld0);
            let e_fm = rel_err(fading_margin(&dist, 1e-6).unwrap(), fm0);
            let e = e_ld.max(e_fm);
            if !(e <= tol) {
                return Err(format!(
                    "K={k_db} dB, M={m}, scale {scale}: ld err {e_ld:e}, margin err {e_fm:e}"
                ));
            }
            worst = worst.max(e);
        }
    }
    Ok(worst)
}
