//! Weeks' Laguerre-series inversion.
//!
//! The right half-plane `Re p > κ - b/2` is mapped onto the unit disc by
//! `p = κ - b/2 + b/(1 - z)`; on `|z| = 1` this is the vertical line
//! `Re p = κ`. The power-series coefficients of
//! `Ψ(z) = b/(1 - z) · f̄(p(z))` become the Laguerre coefficients of
//! `f(t) e^{-(κ - b/2) t}`.

use num_complex::Complex64;
use std::f64::consts::PI;

use super::Inversion;
use crate::error::{Error, Result};
use crate::flags::Flags;
use crate::specfun::laguerre_sum;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WeeksParams {
    pub kappa: f64,
    pub b: f64,
    /// Highest Laguerre order `N`; `N + 1` coefficients are used.
    pub order: usize,
    /// Midpoint half-count `M`; the rule uses `2M` points on the circle
    /// but only the `M` in the upper half-plane are sampled.
    pub half_count: usize,
}

impl WeeksParams {
    pub fn new(kappa: f64, b: f64, order: usize, half_count: usize) -> Result<Self> {
        if !(b.is_finite() && b > 0.0) {
            return Err(Error::InvalidArgument(format!("Weeks b must be > 0, got {b}")));
        }
        if !kappa.is_finite() {
            return Err(Error::InvalidArgument("Weeks κ must be finite".into()));
        }
        if 2 * half_count < order + 1 {
            return Err(Error::InvalidArgument(format!("Weeks needs 2M >= N + 1 (M = {half_count}, N = {order})")));
        }
        Ok(WeeksParams { kappa, b, order, half_count })
    }

    /// `κ = σ + 1/t_max`, `b = N/t_max`, `M = N + 1`.
    pub fn rule_of_thumb(order: usize, sigma: f64, t_max: f64) -> Result<Self> {
        if order == 0 {
            return Err(Error::InvalidArgument("Weeks order must be >= 1".into()));
        }
        Self::new(sigma + 1.0 / t_max, order as f64 / t_max, order, order + 1)
    }

    fn angle(&self, m: usize) -> f64 {
        (m as f64 + 0.5) * PI / self.half_count as f64
    }

    fn map(&self, z: Complex64) -> Complex64 {
        self.kappa - self.b / 2.0 + self.b / (1.0 - z)
    }
}

/// Laplace parameters at the upper-half midpoints
/// `θ_m = (m + 1/2)π/M`, `m = 0..M-1`.
pub fn weeks_nodes(params: &WeeksParams) -> Vec<Complex64> {
    (0..params.half_count).map(|m| params.map(Complex64::from_polar(1.0, params.angle(m)))).collect()
}

/// Coefficients `a_0..a_N` from `values[m] = f̄(p_m)` at [`weeks_nodes`].
///
/// The lower-half midpoints are the conjugates of the upper ones, so for
/// real `f(t)` the full `2M`-point midpoint sum reduces to
/// `a_n = (1/M) Σ_m Re{Ψ(z_m) e^{-inθ_m}}`.
pub fn weeks_coefficients(values: &[Complex64], params: &WeeksParams) -> Result<Vec<f64>> {
    let m_count = params.half_count;
    if values.len() != m_count {
        return Err(Error::PlanMismatch(format!("Weeks expects {m_count} samples, got {}", values.len())));
    }
    let psi: Vec<(f64, Complex64)> = values
        .iter()
        .enumerate()
        .map(|(m, v)| {
            let theta = params.angle(m);
            let z = Complex64::from_polar(1.0, theta);
            (theta, params.b / (1.0 - z) * v)
        })
        .collect();
    let scale = 1.0 / m_count as f64;
    Ok((0..=params.order)
        .map(|n| {
            psi.iter().map(|(theta, w)| (w * Complex64::from_polar(1.0, -(n as f64) * theta)).re).sum::<f64>() * scale
        })
        .collect())
}

/// `e^{(κ - b/2)t} Σ a_n L_n(bt)`.
pub fn weeks_eval(coefficients: &[f64], params: &WeeksParams, t: f64) -> Result<Inversion> {
    super::check_time(t)?;
    let prefactor = ((params.kappa - params.b / 2.0) * t).exp();
    let value = prefactor * laguerre_sum(coefficients, params.b * t);
    if value.is_finite() && prefactor.is_finite() {
        Ok(Inversion::ok(value))
    } else {
        Ok(Inversion::flagged(value, Flags::PREFACTOR_OVERFLOW))
    }
}
