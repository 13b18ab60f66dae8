//! Exact solutions of the benchmark, which is one-dimensional: `φ = −2`
//! at `x = 0`, `φ = +2` at `x = 3`, insulated in `y`, zero initial state.

use num_complex::Complex64;
use std::f64::consts::PI;

use super::pairs::TimeBehavior;
use crate::error::{Error, Result};

pub const LENGTH: f64 = 3.0;
/// Truncation bound under which the series is reported as converged.
pub const SERIES_TOLERANCE: f64 = 1e-10;

fn check_x(x: f64) -> Result<()> {
    if (0.0..=LENGTH).contains(&x) {
        Ok(())
    } else {
        Err(Error::InvalidArgument(format!("x = {x} is outside [0, {LENGTH}]")))
    }
}

/// `(e^{q(x−3)} − e^{−qx}) / (1 − e^{−3q})` and its x-derivative; equals
/// `sinh(q(x − 1.5))/sinh(1.5q)` without overflow for `Re q > 0`.
fn profile(x: f64, q: Complex64) -> (Complex64, Complex64) {
    let a = (q * (x - LENGTH)).exp();
    let b = (-q * x).exp();
    let den = 1.0 - (-LENGTH * q).exp();
    ((a - b) / den, q * (a + b) / den)
}

fn small_q(q: Complex64) -> bool {
    q.norm() < 1e-6
}

/// `φ̄(x, p) = f̄_t(p) · 2 sinh(q(x − 1.5))/sinh(1.5q)`, `q = √p`.
pub fn benchmark_laplace_1d(x: f64, p: Complex64, behavior: TimeBehavior) -> Result<Complex64> {
    check_x(x)?;
    let q = p.sqrt();
    let shape = if small_q(q) { Complex64::new(2.0 * (x - 1.5) / 1.5, 0.0) } else { 2.0 * profile(x, q).0 };
    let v = behavior.image(p) * shape;
    if v.is_finite() {
        Ok(v)
    } else {
        Err(Error::InvalidArgument(format!("1D Laplace oracle overflows at p = {p}")))
    }
}

/// The x-flux `−∂φ̄/∂x`.
pub fn benchmark_flux_laplace_1d(x: f64, p: Complex64, behavior: TimeBehavior) -> Result<Complex64> {
    check_x(x)?;
    let q = p.sqrt();
    let slope = if small_q(q) { Complex64::new(2.0 / 1.5, 0.0) } else { 2.0 * profile(x, q).1 };
    let v = -behavior.image(p) * slope;
    if v.is_finite() {
        Ok(v)
    } else {
        Err(Error::InvalidArgument(format!("1D Laplace flux oracle overflows at p = {p}")))
    }
}

/// Eigenfunction-series values at one `(x, t)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SeriesValue {
    pub potential: f64,
    /// `−∂φ/∂x`.
    pub flux: f64,
    /// Upper bound on the truncation error of either value.
    pub bound: f64,
}

impl SeriesValue {
    pub fn converged(&self) -> bool {
        self.bound <= SERIES_TOLERANCE
    }
}

/// Unit-step response: `φ = −2 + 4x/3 + Σ (4/(mπ)) sin(2mπx/3) e^{−(2mπ/3)² t}`.
fn step_response(x: f64, t: f64, n_terms: usize) -> SeriesValue {
    let steady = -2.0 + 4.0 * x / LENGTH;
    if t <= 0.0 {
        // Zero initial state; the boundary values themselves are the limit only at x ∈ {0, 3}.
        return SeriesValue { potential: 0.0, flux: 0.0, bound: 0.0 };
    }
    let k = 2.0 * PI / LENGTH;
    let mut potential = steady;
    let mut flux = -4.0 / LENGTH;
    for m in 1..=n_terms {
        let mf = m as f64;
        let decay = (-(k * mf).powi(2) * t).exp();
        potential += 4.0 / (mf * PI) * (k * mf * x).sin() * decay;
        flux -= 8.0 / LENGTH * (k * mf * x).cos() * decay;
    }
    // Σ_{m>M} e^{−a m²} ≤ e^{−a(M+1)²} / (1 − e^{−a(M+1)})
    let a = k * k * t;
    let m1 = (n_terms + 1) as f64;
    let tail = (-a * m1 * m1).exp() / (1.0 - (-a * m1).exp());
    let bound = tail * (8.0 / LENGTH).max(4.0 / (m1 * PI));
    SeriesValue { potential, flux, bound }
}

/// Series solution for the step behaviours; the delayed step is the
/// time-shifted unit response and vanishes before onset.
pub fn benchmark_time_series_1d(x: f64, t: f64, behavior: TimeBehavior, n_terms: usize) -> Result<SeriesValue> {
    check_x(x)?;
    if !(t.is_finite() && t > 0.0) {
        return Err(Error::InvalidArgument(format!("series oracle needs t > 0, got {t}")));
    }
    match behavior {
        TimeBehavior::Heaviside => Ok(step_response(x, t, n_terms)),
        TimeBehavior::DelayedStep(tau) => Ok(if t <= tau {
            SeriesValue { potential: 0.0, flux: 0.0, bound: 0.0 }
        } else {
            step_response(x, t - tau, n_terms)
        }),
        TimeBehavior::Cosine4t => Err(Error::InvalidArgument(
            "the series oracle covers step behaviours; use the finite-difference reference".into(),
        )),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn laplace_oracle_landmarks() {
        let p = Complex64::new(2.0, 3.0);
        assert!(benchmark_laplace_1d(1.5, p, TimeBehavior::Heaviside).unwrap().norm() < 1e-15);
        let edge = benchmark_laplace_1d(3.0, p, TimeBehavior::Heaviside).unwrap();
        assert!((edge - 2.0 / p).norm() < 1e-14);
        let tiny = Complex64::new(1e-10, 0.0);
        let v = benchmark_laplace_1d(1.0 / 3.0, tiny, TimeBehavior::Heaviside).unwrap() * tiny;
        assert!((v.re + 14.0 / 9.0).abs() < 1e-8, "{v}");
        let huge = Complex64::new(1e8, 1e7);
        assert!(benchmark_laplace_1d(1.0, huge, TimeBehavior::Heaviside).unwrap().is_finite());
    }

    #[test]
    fn laplace_matches_sinh_form() {
        let p = Complex64::new(1.3, -0.4);
        let q = p.sqrt();
        let x = 0.8;
        let direct = p.inv() * 2.0 * (q * (x - 1.5)).sinh() / (1.5 * q).sinh();
        assert!((benchmark_laplace_1d(x, p, TimeBehavior::Heaviside).unwrap() - direct).norm() < 1e-14);
        let h = 1e-6;
        let fd = -(benchmark_laplace_1d(x + h, p, TimeBehavior::Heaviside).unwrap()
            - benchmark_laplace_1d(x - h, p, TimeBehavior::Heaviside).unwrap())
            / (2.0 * h);
        assert!((benchmark_flux_laplace_1d(x, p, TimeBehavior::Heaviside).unwrap() - fd).norm() < 1e-7);
    }

    #[test]
    fn series_limits() {
        let late = benchmark_time_series_1d(1.0 / 3.0, 50.0, TimeBehavior::Heaviside, 100).unwrap();
        assert!((late.potential + 14.0 / 9.0).abs() < 1e-12);
        assert!((late.flux + 4.0 / 3.0).abs() < 1e-12);
        let early = benchmark_time_series_1d(1.0 / 3.0, 1e-6, TimeBehavior::Heaviside, 20_000).unwrap();
        assert!(early.potential.abs() < 1e-6, "{}", early.potential);
        let before = benchmark_time_series_1d(1.0 / 3.0, 0.05, TimeBehavior::DelayedStep(0.08), 100).unwrap();
        assert_eq!(before.potential, 0.0);
    }

    #[test]
    fn truncation_is_reported() {
        let coarse = benchmark_time_series_1d(1.0 / 3.0, 1e-3, TimeBehavior::Heaviside, 3).unwrap();
        assert!(!coarse.converged());
        let fine = benchmark_time_series_1d(1.0 / 3.0, 1e-3, TimeBehavior::Heaviside, 200).unwrap();
        assert!(fine.converged());
        assert!((coarse.potential - fine.potential).abs() <= coarse.bound);
    }

    #[test]
    fn rejects_cosine_and_bad_input() {
        assert!(benchmark_time_series_1d(1.0, 1.0, TimeBehavior::Cosine4t, 10).is_err());
        assert!(benchmark_time_series_1d(4.0, 1.0, TimeBehavior::Heaviside, 10).is_err());
        assert!(benchmark_time_series_1d(1.0, 0.0, TimeBehavior::Heaviside, 10).is_err());
    }
}
