use rayon::prelude::*;

use super::format::fmt6;
use super::registry::{CurveKind, Grid};
use crate::channel::{linear_to_db, ChannelSpec, GainDistribution};
use crate::error::Result;

/// Evaluates `kind` over `grid` (or its default grid).
///
/// With `normalize`, gain axes are relative to the mean gain; probability
/// axes are unaffected since local diversity is scale invariant.
pub fn cmd_curve(
    kind: &dyn CurveKind,
    spec: &ChannelSpec,
    grid: Option<Grid>,
    normalize: bool,
) -> Result<Vec<(f64, f64)>> {
    let mut dist = GainDistribution::new(spec.clone());
    if normalize && kind.gain_axis() {
        dist = dist.normalize_unit_mean()?;
    }
    let xs = grid.unwrap_or_else(|| kind.default_grid()).points()?;
    xs.par_iter().map(|&x| Ok((x, kind.y(&dist, x)?))).collect()
}

pub fn curve_csv(kind: &dyn CurveKind, points: &[(f64, f64)]) -> String {
    let (cx, cy) = kind.columns();
    let mut out = format!("{cx},{cy}\n");
    for (x, y) in points {
        out.push_str(&format!("{},{}\n", fmt6(*x), fmt6(*y)));
    }
    out
}

/// `(gain_db, p)` pairs on an absolute gain axis running from the 1e-9
/// quantile to just above the bulk of the distribution.
pub(crate) fn cdf_points_db(dist: &GainDistribution, n: usize) -> Result<Vec<(f64, f64)>> {
    let lo = linear_to_db(dist.quantile(1e-9)?).floor();
    let hi = linear_to_db(dist.quantile(1.0 - 1e-6)?).ceil();
    let xs = Grid::linear(lo, hi, n).points()?;
    xs.par_iter()
        .map(|&x| Ok((x, dist.cdf(10f64.powf(x / 10.0))?)))
        .collect()
}
