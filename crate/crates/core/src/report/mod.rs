//! Table, curve and scenario generation behind the `urdiv` command line.
//!
//! Every emitter returns a complete `String` (or a serialisable report), so
//! a failing command never leaves partial output behind.

mod curve;
mod dkw_demo;
pub mod format;
mod mc;
pub mod registry;
mod scenario;
mod table;

pub use curve::{cmd_curve, curve_csv};
pub use dkw_demo::{cmd_dkw_demo, DkwDemo, DkwDemoResult, DkwRow};
pub use mc::{cmd_mc, gain_variance, MonteCarloReport};
pub use registry::{CurveKind, CurveRegistry, Grid, MetricRegistry, Spacing, TableMetric};
pub use scenario::{
    cmd_scenario, Deployment, DeploymentReport, ScenarioReport, ScenarioSpec, SCHEMA_VERSION,
};
pub use table::{cmd_table, MetricTable, TABLE_K_DB, TABLE_M, TABLE_PROBABILITY};
