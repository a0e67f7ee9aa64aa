//! Scalar special-function kernels used by the channel model.

mod bessel;
mod gamma;
mod marcum;

pub use bessel::{bessel_i, log_bessel_i};
pub use gamma::{ln_gamma, log_power_prefactor, log_reg_lower_gamma, reg_lower_gamma};
pub use marcum::{marcum_p, marcum_p_log, MarcumArgs};
