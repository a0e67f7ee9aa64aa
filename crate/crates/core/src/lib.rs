//! Ultra-reliability statistics of uncorrelated multi-antenna Rician fading.
//!
//! The crate is layered bottom-up:
//!
//! * [`special`]: Bessel, incomplete gamma and complementary Marcum-Q kernels;
//! * [`channel`]: the fading environment and its effective-gain law;
//! * [`metrics`]: local diversity, fading margin and the DKW error term;
//! * [`montecarlo`]: a seeded channel sampler and ECDF validation;
//! * [`report`]: tables, curves and scenario reports behind the CLI.

// `!(x > 0.0)` is used on purpose so that NaN fails validation
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod channel;
pub mod error;
pub mod metrics;
pub mod montecarlo;
pub mod report;
pub mod special;

pub use channel::{mean_gain, sc_cdf, ChannelSpec, GainDistribution};
pub use error::{Error, Result};
pub use metrics::{
    dkw_epsilon, fading_margin, local_diversity, local_diversity_at_probability,
    local_diversity_marcum, DkwBound, LocalDiversityPoint,
};
