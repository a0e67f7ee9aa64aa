//! Name-keyed registries of table metrics and curve kinds.
//!
//! Each variant implements a small trait and is registered under the name
//! the CLI accepts. `MetricRegistry::builtin()` and `CurveRegistry::builtin()`
//! carry everything the command line offers; callers may register more.

use std::collections::BTreeMap;

use crate::channel::GainDistribution;
use crate::error::{Error, Result};
use crate::metrics::{fading_margin, local_diversity, local_diversity_at_probability};

/// A scalar figure of merit of a distribution at a target probability.
pub trait TableMetric: Send + Sync {
    fn name(&self) -> &'static str;
    fn description(&self) -> &'static str;
    /// Decimals used by rounded output.
    fn decimals(&self) -> usize;
    fn evaluate(&self, dist: &GainDistribution, p: f64) -> Result<f64>;
}

/// `D / M` at the gain whose outage probability is `p`.
pub struct NormalizedLocalDiversity;

impl TableMetric for NormalizedLocalDiversity {
    fn name(&self) -> &'static str {
        "nld"
    }
    fn description(&self) -> &'static str {
        "normalised local diversity D/M"
    }
    fn decimals(&self) -> usize {
        2
    }
    fn evaluate(&self, dist: &GainDistribution, p: f64) -> Result<f64> {
        Ok(local_diversity_at_probability(dist, p)?.d_norm)
    }
}

/// Median-to-quantile gap in dB.
pub struct FadingMarginDb;

impl TableMetric for FadingMarginDb {
    fn name(&self) -> &'static str {
        "margin"
    }
    fn description(&self) -> &'static str {
        "fading margin in dB"
    }
    fn decimals(&self) -> usize {
        1
    }
    fn evaluate(&self, dist: &GainDistribution, p: f64) -> Result<f64> {
        fading_margin(dist, p)
    }
}

/// Un-normalised local diversity `D`.
pub struct LocalDiversityMetric;

impl TableMetric for LocalDiversityMetric {
    fn name(&self) -> &'static str {
        "ld"
    }
    fn description(&self) -> &'static str {
        "local diversity D"
    }
    fn decimals(&self) -> usize {
        2
    }
    fn evaluate(&self, dist: &GainDistribution, p: f64) -> Result<f64> {
        Ok(local_diversity_at_probability(dist, p)?.d)
    }
}

#[derive(Default)]
pub struct MetricRegistry {
    entries: BTreeMap<&'static str, Box<dyn TableMetric>>,
}

impl MetricRegistry {
    pub fn builtin() -> Self {
        let mut r = MetricRegistry::default();
        r.register(Box::new(NormalizedLocalDiversity));
        r.register(Box::new(FadingMarginDb));
        r.register(Box::new(LocalDiversityMetric));
        r
    }

    /// Registers `metric`, replacing any entry of the same name.
    pub fn register(&mut self, metric: Box<dyn TableMetric>) {
        self.entries.insert(metric.name(), metric);
    }

    pub fn get(&self, name: &str) -> Result<&dyn TableMetric> {
        self.entries.get(name).map(|m| m.as_ref()).ok_or_else(|| {
            Error::Parse(format!(
                "unknown metric '{name}' (known: {})",
                self.names().join(", ")
            ))
        })
    }

    pub fn names(&self) -> Vec<&'static str> {
        self.entries.keys().copied().collect()
    }
}

/// Axis spacing of a curve grid.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Spacing {
    Linear,
    Log,
}

/// `n` points from `start` to `stop` inclusive.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Grid {
    pub start: f64,
    pub stop: f64,
    pub n: usize,
    pub spacing: Spacing,
}

impl Grid {
    pub fn linear(start: f64, stop: f64, n: usize) -> Self {
        Grid {
            start,
            stop,
            n,
            spacing: Spacing::Linear,
        }
    }

    pub fn log(start: f64, stop: f64, n: usize) -> Self {
        Grid {
            start,
            stop,
            n,
            spacing: Spacing::Log,
        }
    }

    /// Parses `START:STOP:N`, keeping this grid's spacing.
    pub fn parse_like(&self, s: &str) -> Result<Grid> {
        let parts: Vec<&str> = s.split(':').collect();
        let bad = || Error::Parse(format!("grid must be START:STOP:N, got '{s}'"));
        if parts.len() != 3 {
            return Err(bad());
        }
        let start: f64 = parts[0].trim().parse().map_err(|_| bad())?;
        let stop: f64 = parts[1].trim().parse().map_err(|_| bad())?;
        let n: usize = parts[2].trim().parse().map_err(|_| bad())?;
        let g = Grid {
            start,
            stop,
            n,
            spacing: self.spacing,
        };
        g.validate()?;
        Ok(g)
    }

    fn validate(&self) -> Result<()> {
        if self.n < 2
            || !self.start.is_finite()
            || !self.stop.is_finite()
            || self.start >= self.stop
        {
            return Err(Error::Parse(format!(
                "grid needs finite START < STOP and N >= 2, got {}:{}:{}",
                self.start, self.stop, self.n
            )));
        }
        if self.spacing == Spacing::Log && self.start <= 0.0 {
            return Err(Error::Parse("log-spaced grid needs START > 0".into()));
        }
        Ok(())
    }

    pub fn points(&self) -> Result<Vec<f64>> {
        self.validate()?;
        let steps = (self.n - 1) as f64;
        let pts = match self.spacing {
            Spacing::Linear => (0..self.n)
                .map(|i| self.start + (self.stop - self.start) * i as f64 / steps)
                .collect(),
            Spacing::Log => {
                let (a, b) = (self.start.log10(), self.stop.log10());
                (0..self.n)
                    .map(|i| 10f64.powf(a + (b - a) * i as f64 / steps))
                    .collect()
            }
        };
        Ok(pts)
    }
}

/// One family of `(x, y)` curves over a distribution.
pub trait CurveKind: Send + Sync {
    fn name(&self) -> &'static str;
    /// Column headers for x and y.
    fn columns(&self) -> (&'static str, &'static str);
    fn default_grid(&self) -> Grid;
    /// Whether unit-mean normalisation changes the x axis.
    fn gain_axis(&self) -> bool;
    fn y(&self, dist: &GainDistribution, x: f64) -> Result<f64>;
}

/// Normalised gain axis of the figures: −60 dB to +20 dB.
pub fn default_gain_grid() -> Grid {
    Grid::linear(-60.0, 20.0, 200)
}

/// Probability axis: 1e-9 up to just below certainty.
pub fn default_probability_grid() -> Grid {
    Grid::log(1e-9, 0.999, 200)
}

fn gain_from_db(x_db: f64) -> f64 {
    10f64.powf(x_db / 10.0)
}

pub struct CdfCurve;

impl CurveKind for CdfCurve {
    fn name(&self) -> &'static str {
        "cdf"
    }
    fn columns(&self) -> (&'static str, &'static str) {
        ("gain_db", "cdf")
    }
    fn default_grid(&self) -> Grid {
        default_gain_grid()
    }
    fn gain_axis(&self) -> bool {
        true
    }
    fn y(&self, dist: &GainDistribution, x: f64) -> Result<f64> {
        dist.cdf(gain_from_db(x))
    }
}

pub struct LocalDiversityVsGain;

impl CurveKind for LocalDiversityVsGain {
    fn name(&self) -> &'static str {
        "ld-gain"
    }
    fn columns(&self) -> (&'static str, &'static str) {
        ("gain_db", "local_diversity")
    }
    fn default_grid(&self) -> Grid {
        default_gain_grid()
    }
    fn gain_axis(&self) -> bool {
        true
    }
    fn y(&self, dist: &GainDistribution, x: f64) -> Result<f64> {
        local_diversity(dist, gain_from_db(x))
    }
}

pub struct LocalDiversityVsProbability;

impl CurveKind for LocalDiversityVsProbability {
    fn name(&self) -> &'static str {
        "ld-prob"
    }
    fn columns(&self) -> (&'static str, &'static str) {
        ("probability", "local_diversity")
    }
    fn default_grid(&self) -> Grid {
        default_probability_grid()
    }
    fn gain_axis(&self) -> bool {
        false
    }
    fn y(&self, dist: &GainDistribution, p: f64) -> Result<f64> {
        Ok(local_diversity_at_probability(dist, p)?.d)
    }
}

#[derive(Default)]
pub struct CurveRegistry {
    entries: BTreeMap<&'static str, Box<dyn CurveKind>>,
}

impl CurveRegistry {
    pub fn builtin() -> Self {
        let mut r = CurveRegistry::default();
        r.register(Box::new(CdfCurve));
        r.register(Box::new(LocalDiversityVsGain));
        r.register(Box::new(LocalDiversityVsProbability));
        r
    }

    pub fn register(&mut self, kind: Box<dyn CurveKind>) {
        self.entries.insert(kind.name(), kind);
    }

    pub fn get(&self, name: &str) -> Result<&dyn CurveKind> {
        self.entries.get(name).map(|k| k.as_ref()).ok_or_else(|| {
            Error::Parse(format!(
                "unknown curve kind '{name}' (known: {})",
                self.names().join(", ")
            ))
        })
    }

    pub fn names(&self) -> Vec<&'static str> {
        self.entries.keys().copied().collect()
    }
}
