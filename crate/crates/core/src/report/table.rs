use rayon::prelude::*;

use super::format::{fmt6, fmt_k_db};
use super::registry::TableMetric;
use crate::channel::{ChannelSpec, GainDistribution};
use crate::error::{domain, Result};

/// K-factor rows of the published tables, in dB.
pub const TABLE_K_DB: [f64; 6] = [f64::NEG_INFINITY, 0.0, 3.0, 6.0, 10.0, 20.0];
/// Antenna-count columns of the published tables.
pub const TABLE_M: [usize; 8] = [1, 2, 4, 8, 16, 32, 64, 128];
pub const TABLE_PROBABILITY: f64 = 1e-6;

/// Rows of K-factors (dB) by columns of antenna counts.
#[derive(Debug, Clone, PartialEq)]
pub struct MetricTable {
    pub row_labels: Vec<f64>,
    pub col_labels: Vec<usize>,
    /// `cells[row][col]`.
    pub cells: Vec<Vec<f64>>,
    pub metric: String,
    pub decimals: usize,
    pub probability: f64,
}

impl MetricTable {
    pub fn cell(&self, k_db: f64, m: usize) -> Option<f64> {
        let r = self.row_labels.iter().position(|&k| k == k_db)?;
        let c = self.col_labels.iter().position(|&x| x == m)?;
        Some(self.cells[r][c])
    }

    /// CSV with header `k_db,<M...>`; six significant digits, or the metric's
    /// printed precision when `round` is set.
    pub fn to_csv(&self, round: bool) -> String {
        let mut out = String::from("k_db");
        for m in &self.col_labels {
            out.push(',');
            out.push_str(&m.to_string());
        }
        out.push('\n');
        for (k, row) in self.row_labels.iter().zip(&self.cells) {
            out.push_str(&fmt_k_db(*k));
            for v in row {
                out.push(',');
                if round {
                    out.push_str(&format!("{:.*}", self.decimals, v));
                } else {
                    out.push_str(&fmt6(*v));
                }
            }
            out.push('\n');
        }
        out
    }
}

/// Evaluates `metric` over the `(K_dB, M)` grid with unit diffuse power.
pub fn cmd_table(
    metric: &dyn TableMetric,
    probability: f64,
    k_db: &[f64],
    m: &[usize],
) -> Result<MetricTable> {
    if !(probability > 0.0 && probability < 0.5) {
        return domain(format!(
            "table probability must lie in (0, 0.5), got {probability}"
        ));
    }
    if k_db.is_empty() || m.is_empty() {
        return domain("table grid needs at least one K-factor and one antenna count");
    }
    let mut specs = Vec::with_capacity(k_db.len() * m.len());
    for &k in k_db {
        for &mm in m {
            specs.push(ChannelSpec::uniform_db(1.0, k, mm)?);
        }
    }
    let flat: Vec<f64> = specs
        .into_par_iter()
        .map(|s| metric.evaluate(&GainDistribution::new(s), probability))
        .collect::<Result<_>>()?;
    let cells = flat.chunks(m.len()).map(<[f64]>::to_vec).collect();
    Ok(MetricTable {
        row_labels: k_db.to_vec(),
        col_labels: m.to_vec(),
        cells,
        metric: metric.name().to_string(),
        decimals: metric.decimals(),
        probability,
    })
}
