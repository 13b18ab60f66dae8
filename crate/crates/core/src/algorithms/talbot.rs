//! Fixed Talbot inversion on the contour `p(θ) = rθ(cot θ + i)`.

use num_complex::Complex64;
use std::f64::consts::PI;

use super::Inversion;
use crate::error::{Error, Result};
use crate::flags::Flags;

/// The contour tail must be this small relative to the largest integrand
/// magnitude, otherwise the truncated contour is not a valid quadrature.
pub const TAIL_TOLERANCE: f64 = 1e-2;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TalbotParams {
    pub r: f64,
    pub n: usize,
}

impl TalbotParams {
    pub fn new(r: f64, n: usize) -> Result<Self> {
        if !(r.is_finite() && r > 0.0) {
            return Err(Error::InvalidArgument(format!("Talbot r must be > 0, got {r}")));
        }
        if n < 2 {
            return Err(Error::InvalidArgument("Talbot needs N >= 2".into()));
        }
        Ok(TalbotParams { r, n })
    }

    /// `r = 2N / (5 t_max)`.
    pub fn rule_of_thumb(n: usize, t_max: f64) -> Result<Self> {
        Self::new(2.0 * n as f64 / (5.0 * t_max), n)
    }
}

/// `(θ_k, cot θ_k)` with `θ_k = kπ/N`; the cotangent past `π/2` is taken
/// from the reflected angle so it stays accurate near `π`.
fn angle_and_cot(k: usize, n: usize) -> (f64, f64) {
    let theta = k as f64 * PI / n as f64;
    let cot = if 2 * k <= n { 1.0 / theta.tan() } else { -1.0 / ((n - k) as f64 * PI / n as f64).tan() };
    (theta, cot)
}

/// Nodes `p(θ_k)`, `k = 0..N-1`, with `p(0) = r`.
pub fn talbot_contour(r: f64, n: usize) -> Vec<Complex64> {
    let mut nodes = Vec::with_capacity(n);
    nodes.push(Complex64::new(r, 0.0));
    for k in 1..n {
        let (theta, cot) = angle_and_cot(k, n);
        nodes.push(Complex64::new(r * theta * cot, r * theta));
    }
    nodes
}

/// `(r/N)[f̄(r)e^{rt}/2 + Σ_{k≥1} Re{e^{t p_k} f̄(p_k)(1 + iζ(θ_k))}]`
/// with `ζ(θ) = θ + (θ cot θ - 1) cot θ`.
pub fn talbot_invert(values: &[Complex64], t: f64, params: &TalbotParams) -> Result<Inversion> {
    super::check_time(t)?;
    let (r, n) = (params.r, params.n);
    if values.len() != n {
        return Err(Error::PlanMismatch(format!("Talbot expects {n} samples, got {}", values.len())));
    }
    if values.iter().any(|v| !v.is_finite()) {
        return Ok(Inversion::flagged(f64::NAN, Flags::CONTOUR_OVERFLOW | Flags::NON_FINITE_SAMPLE));
    }
    let head = values[0] * (r * t).exp() * 0.5;
    let mut sum = head.re;
    let mut largest = head.norm();
    let mut tail = 0.0;
    for (k, v) in values.iter().enumerate().skip(1) {
        let (theta, cot) = angle_and_cot(k, n);
        let p = Complex64::new(r * theta * cot, r * theta);
        let zeta = theta + (theta * cot - 1.0) * cot;
        let term = (t * p).exp() * v * Complex64::new(1.0, zeta);
        sum += term.re;
        let m = term.norm();
        largest = largest.max(m);
        if k == n - 1 {
            tail = m;
        }
    }
    let value = r / n as f64 * sum;
    let mut flags = Flags::empty();
    if !value.is_finite() || tail.is_nan() || tail > TAIL_TOLERANCE * largest {
        flags |= Flags::CONTOUR_OVERFLOW;
    }
    Ok(Inversion::flagged(value, flags))
}
