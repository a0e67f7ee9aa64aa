//! Deployment comparison: fading margin, mean gain and local diversity of
//! several channel configurations at one target outage probability.
//!
//! Scenario files are TOML:
//!
//! ```toml
//! p_target = 1e-6
//!
//! [[deployment]]
//! name = "co-located"
//! m = 64
//! k_db = 0.0        # or "-inf", or `k = 1.0` (linear), or `k_factors = [...]`
//! p_dif = 1.0       # optional, defaults to 1
//! ```

use serde::{Deserialize, Serialize};

use super::curve::cdf_points_db;
use super::format::{fmt_k_db, round6};
use crate::channel::{linear_to_db, ChannelSpec, GainDistribution};
use crate::error::{domain, Error, Result};
use crate::metrics::{fading_margin, local_diversity_at_probability, LocalDiversityPoint};

pub const SCHEMA_VERSION: u32 = 1;
const CDF_POINTS: usize = 200;

#[derive(Debug, Clone, PartialEq)]
pub struct Deployment {
    pub name: String,
    pub spec: ChannelSpec,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ScenarioSpec {
    pub deployments: Vec<Deployment>,
    pub p_target: f64,
}

impl ScenarioSpec {
    pub fn new(deployments: Vec<Deployment>, p_target: f64) -> Result<Self> {
        if deployments.is_empty() {
            return domain("a scenario needs at least one deployment");
        }
        if !(p_target > 0.0 && p_target < 0.5) {
            return domain(format!(
                "scenario target probability must lie in (0, 0.5), got {p_target}"
            ));
        }
        Ok(ScenarioSpec {
            deployments,
            p_target,
        })
    }

    /// A co-located 64-antenna array at K = 0 dB against a 32-antenna
    /// distributed array whose shorter path raises K to 4, at 1e-6.
    pub fn default_comparison() -> Self {
        let deployments = vec![
            Deployment {
                name: "co-located".into(),
                spec: ChannelSpec::uniform(1.0, 1.0, 64).unwrap(),
            },
            Deployment {
                name: "distributed".into(),
                spec: ChannelSpec::uniform(1.0, 4.0, 32).unwrap(),
            },
        ];
        ScenarioSpec {
            deployments,
            p_target: 1e-6,
        }
    }

    pub fn from_toml(text: &str) -> Result<Self> {
        let file: ScenarioFile = toml::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
        let deployments = file
            .deployment
            .into_iter()
            .map(DeploymentEntry::into_deployment)
            .collect::<Result<_>>()?;
        Self::new(deployments, file.p_target.unwrap_or(1e-6))
    }
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct ScenarioFile {
    p_target: Option<f64>,
    #[serde(default)]
    deployment: Vec<DeploymentEntry>,
}

#[derive(Deserialize)]
#[serde(untagged)]
enum DbValue {
    Number(f64),
    Text(String),
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct DeploymentEntry {
    name: String,
    m: Option<usize>,
    k_db: Option<DbValue>,
    k: Option<f64>,
    k_factors: Option<Vec<f64>>,
    p_dif: Option<f64>,
}

impl DeploymentEntry {
    fn into_deployment(self) -> Result<Deployment> {
        let p_dif = self.p_dif.unwrap_or(1.0);
        let given = [
            self.k_db.is_some(),
            self.k.is_some(),
            self.k_factors.is_some(),
        ];
        if given.iter().filter(|g| **g).count() != 1 {
            return Err(Error::Parse(format!(
                "deployment '{}': give exactly one of k_db, k, k_factors",
                self.name
            )));
        }
        let spec = if let Some(list) = self.k_factors {
            if self.m.is_some_and(|m| m != list.len()) {
                return Err(Error::Parse(format!(
                    "deployment '{}': m does not match k_factors length",
                    self.name
                )));
            }
            ChannelSpec::new(p_dif, list)?
        } else {
            let m = self
                .m
                .ok_or_else(|| Error::Parse(format!("deployment '{}': missing m", self.name)))?;
            let k = match (self.k, self.k_db) {
                (Some(k), _) => k,
                (None, Some(DbValue::Number(db))) => crate::channel::db_to_linear(db),
                (None, Some(DbValue::Text(t))) => super::format::parse_k_db(&t)
                    .map(crate::channel::db_to_linear)
                    .ok_or_else(|| {
                        Error::Parse(format!("deployment '{}': bad k_db '{t}'", self.name))
                    })?,
                (None, None) => unreachable!(),
            };
            ChannelSpec::uniform(p_dif, k, m)?
        };
        Ok(Deployment {
            name: self.name,
            spec,
        })
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct CdfPoint {
    pub gain_db: f64,
    pub p: f64,
}

#[derive(Debug, Clone, Serialize)]
pub struct DeploymentReport {
    pub name: String,
    pub m: usize,
    /// `"-inf"` or a number when every antenna shares one K-factor.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub k_db: Option<serde_json::Value>,
    pub k_sum: f64,
    pub p_dif: f64,
    pub mean_gain: f64,
    pub median_gain: f64,
    pub fading_margin_db: f64,
    pub local_diversity_at_p: LocalDiversityPoint,
    pub cdf: Vec<CdfPoint>,
}

#[derive(Debug, Clone, Serialize)]
pub struct ScenarioReport {
    pub schema: u32,
    pub p_target: f64,
    pub deployments: Vec<DeploymentReport>,
}

impl ScenarioReport {
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serialises");
        s.push('\n');
        s
    }
}

fn k_db_value(spec: &ChannelSpec) -> Option<serde_json::Value> {
    let k = spec.k_factors()[0];
    if spec.k_factors().iter().any(|&x| x != k) {
        return None;
    }
    let db = linear_to_db(k);
    Some(if db.is_finite() {
        serde_json::json!(round6(db))
    } else {
        serde_json::Value::String(fmt_k_db(db))
    })
}

pub fn cmd_scenario(scenario: &ScenarioSpec) -> Result<ScenarioReport> {
    let p = scenario.p_target;
    let deployments = scenario
        .deployments
        .iter()
        .map(|d| {
            let dist = GainDistribution::new(d.spec.clone());
            let ld = local_diversity_at_probability(&dist, p)?;
            let cdf = cdf_points_db(&dist, CDF_POINTS)?
                .into_iter()
                .map(|(gain_db, p)| CdfPoint {
                    gain_db: round6(gain_db),
                    p: round6(p),
                })
                .collect();
            Ok(DeploymentReport {
                name: d.name.clone(),
                m: dist.m(),
                k_db: k_db_value(&d.spec),
                k_sum: round6(dist.k_sum()),
                p_dif: round6(dist.p_dif()),
                mean_gain: round6(dist.mean()),
                median_gain: round6(dist.median()?),
                fading_margin_db: round6(fading_margin(&dist, p)?),
                local_diversity_at_p: LocalDiversityPoint {
                    q: round6(ld.q),
                    p: ld.p,
                    d: round6(ld.d),
                    d_norm: round6(ld.d_norm),
                },
                cdf,
            })
        })
        .collect::<Result<_>>()?;
    Ok(ScenarioReport {
        schema: SCHEMA_VERSION,
        p_target: p,
        deployments,
    })
}
