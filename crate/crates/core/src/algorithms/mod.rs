//! The five inversion algorithms. Each consumes image values at the nodes
//! its parameters define and returns one real time-domain value.

pub mod dehoog;
pub mod schapery;
pub mod stehfest;
pub mod talbot;
pub mod weeks;

use crate::flags::Flags;

pub use dehoog::{dehoog_invert, fourier_direct_sum, DeHoogParams};
pub use schapery::{schapery_eval, schapery_fit, SchaperyFit, SchaperyParams};
pub use stehfest::{stehfest_invert, stehfest_weights, stehfest_weights_exact, StehfestParams};
pub use talbot::{talbot_contour, talbot_invert, TalbotParams};
pub use weeks::{weeks_coefficients, weeks_eval, weeks_nodes, WeeksParams};

/// One inverted value with its diagnostics.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Inversion {
    pub value: f64,
    pub flags: Flags,
}

impl Inversion {
    pub fn ok(value: f64) -> Self {
        Inversion { value, flags: Flags::empty() }
    }

    pub fn flagged(value: f64, flags: Flags) -> Self {
        Inversion { value, flags }
    }
}

pub(crate) fn check_time(t: f64) -> crate::error::Result<()> {
    if t.is_finite() && t > 0.0 {
        Ok(())
    } else {
        Err(crate::error::Error::InvalidArgument(format!("inversion time must be finite and > 0, got {t}")))
    }
}
