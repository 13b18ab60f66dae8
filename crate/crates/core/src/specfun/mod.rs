//! Special functions used by the boundary-element kernel and the Weeks
//! Laguerre expansion.

mod bessel;
mod laguerre;

pub use bessel::{bessel_k01, BesselPair, ASYMPTOTIC_RADIUS, SERIES_RADIUS};
pub use laguerre::laguerre_sum;
