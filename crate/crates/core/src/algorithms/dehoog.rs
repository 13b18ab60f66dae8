//! De Hoog, Knight and Stokes acceleration of the Fourier-series inversion.

use num_complex::Complex64;
use std::f64::consts::PI;

use super::Inversion;
use crate::error::{Error, Result};
use crate::flags::Flags;

pub const DEFAULT_TOLERANCE: f64 = 1e-8;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DeHoogParams {
    /// Scaling period `T`.
    pub period: f64,
    /// Contour abscissa `γ₀`.
    pub gamma: f64,
    pub tolerance: f64,
    /// Half order; `2M + 1` samples are consumed.
    pub m: usize,
}

impl DeHoogParams {
    pub fn new(period: f64, gamma: f64, m: usize) -> Result<Self> {
        if !(period.is_finite() && period > 0.0) {
            return Err(Error::InvalidArgument(format!("de Hoog period must be > 0, got {period}")));
        }
        if !gamma.is_finite() {
            return Err(Error::InvalidArgument("de Hoog abscissa must be finite".into()));
        }
        if m == 0 {
            return Err(Error::InvalidArgument("de Hoog needs at least 3 terms".into()));
        }
        Ok(DeHoogParams { period, gamma, tolerance: DEFAULT_TOLERANCE, m })
    }

    /// `T = factor·t_max`, `γ₀ = σ − ln(ε)/T`, `M = (terms − 1)/2`.
    pub fn rule_of_thumb(terms: usize, sigma: f64, t_max: f64, period_factor: f64, tolerance: f64) -> Result<Self> {
        if !(tolerance > 0.0 && tolerance < 1.0) {
            return Err(Error::InvalidArgument(format!("tolerance must be in (0, 1), got {tolerance}")));
        }
        let period = period_factor * t_max;
        let mut params = Self::new(period, sigma - tolerance.ln() / period, terms.saturating_sub(1) / 2)?;
        params.tolerance = tolerance;
        Ok(params)
    }

    pub fn terms(&self) -> usize {
        2 * self.m + 1
    }

    pub fn nodes(&self) -> Vec<Complex64> {
        (0..self.terms()).map(|k| Complex64::new(self.gamma, k as f64 * PI / self.period)).collect()
    }
}

fn check_len(values: &[Complex64], params: &DeHoogParams) -> Result<()> {
    if values.len() != params.terms() {
        return Err(Error::PlanMismatch(format!("de Hoog expects {} samples, got {}", params.terms(), values.len())));
    }
    Ok(())
}

/// Plain trapezoid sum `e^{γt}/T [a₀/2 + Σ Re(a_k e^{ikπt/T})]`.
pub fn fourier_direct_sum(values: &[Complex64], t: f64, period: f64, gamma: f64) -> f64 {
    let mut sum = 0.5 * values.first().map_or(0.0, |a| a.re);
    for (k, a) in values.iter().enumerate().skip(1) {
        sum += (a * Complex64::from_polar(1.0, k as f64 * PI * t / period)).re;
    }
    (gamma * t).exp() / period * sum
}

/// Continued-fraction coefficients `d_0..d_{2M}` from the QD table, or
/// `None` on breakdown.
fn qd_coefficients(a: &[Complex64], m: usize) -> Option<Vec<Complex64>> {
    let zero = Complex64::new(0.0, 0.0);
    let n = 2 * m + 1;
    // e[i][r], q[i][r]
    let mut e = vec![vec![zero; m + 1]; n];
    let mut q = vec![vec![zero; m + 1]; n - 1];
    for i in 0..n - 1 {
        if a[i] == zero {
            return None;
        }
        q[i][1] = a[i + 1] / a[i];
    }
    for r in 1..=m {
        let rows = 2 * (m - r) + 1;
        for i in 0..rows {
            e[i][r] = q[i + 1][r] - q[i][r] + e[i + 1][r - 1];
        }
        if r < m {
            let rows = 2 * (m - r - 1) + 3;
            for i in 0..rows {
                if e[i][r] == zero {
                    return None;
                }
                q[i][r + 1] = q[i + 1][r] * e[i + 1][r] / e[i][r];
            }
        }
    }
    let mut d = vec![zero; n];
    d[0] = a[0];
    for r in 1..=m {
        d[2 * r - 1] = -q[0][r];
        d[2 * r] = -e[0][r];
    }
    d.iter().all(|v| v.is_finite()).then_some(d)
}

fn accelerated(a: &[Complex64], m: usize, z: Complex64) -> Option<Complex64> {
    let d = qd_coefficients(a, m)?;
    let n = 2 * m;
    let one = Complex64::new(1.0, 0.0);
    let (mut a_prev, mut a_cur) = (Complex64::new(0.0, 0.0), d[0]);
    let (mut b_prev, mut b_cur) = (one, one);
    for dk in &d[1..n] {
        let a_next = a_cur + dk * a_prev * z;
        let b_next = b_cur + dk * b_prev * z;
        (a_prev, a_cur) = (a_cur, a_next);
        (b_prev, b_cur) = (b_cur, b_next);
    }
    // The remainder stands in for the tail `d_{2M} z / (1 + ...)`.
    let h = 0.5 * (one + (d[n - 1] - d[n]) * z);
    let rem = -h * (one - (one + d[n] * z / (h * h)).sqrt());
    let num = a_cur + rem * a_prev;
    let den = b_cur + rem * b_prev;
    let value = num / den;
    value.is_finite().then_some(value)
}

/// Accelerated inversion; falls back to [`fourier_direct_sum`] and sets
/// [`Flags::QD_BREAKDOWN`] when the QD table degenerates.
pub fn dehoog_invert(values: &[Complex64], t: f64, params: &DeHoogParams) -> Result<Inversion> {
    super::check_time(t)?;
    check_len(values, params)?;
    let (period, gamma) = (params.period, params.gamma);
    if values.iter().any(|v| !v.is_finite()) {
        return Ok(Inversion::flagged(f64::NAN, Flags::NON_FINITE_SAMPLE));
    }
    let mut a = values.to_vec();
    a[0] *= 0.5;
    let z = Complex64::from_polar(1.0, PI * t / period);
    match accelerated(&a, params.m, z) {
        Some(v) => {
            let value = (gamma * t).exp() / period * v.re;
            let flags = if value.is_finite() { Flags::empty() } else { Flags::PREFACTOR_OVERFLOW };
            Ok(Inversion::flagged(value, flags))
        }
        None => Ok(Inversion::flagged(fourier_direct_sum(values, t, period, gamma), Flags::QD_BREAKDOWN)),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run(f: impl Fn(Complex64) -> Complex64, t: f64, params: &DeHoogParams) -> Inversion {
        let values: Vec<Complex64> = params.nodes().into_iter().map(f).collect();
        dehoog_invert(&values, t, params).unwrap()
    }

    #[test]
    fn ramp() {
        let params = DeHoogParams::rule_of_thumb(41, 0.0, 1.0, 2.0, DEFAULT_TOLERANCE).unwrap();
        assert_eq!(params.terms(), 41);
        let inv = run(|p| (p * p).inv(), 1.0, &params);
        assert!((inv.value - 1.0).abs() < 1e-8, "{}", inv.value);
        assert!(inv.flags.is_empty());
    }

    #[test]
    fn cosine() {
        for t_max in [1.0, 2.0] {
            let params = DeHoogParams::rule_of_thumb(51, 0.0, t_max, 2.0, DEFAULT_TOLERANCE).unwrap();
            let inv = run(|p| p / (p * p + 16.0), 1.0, &params);
            assert!((inv.value - 4f64.cos()).abs() < 1e-6, "{}", inv.value);
        }
    }

    #[test]
    fn zero_image_uses_fallback() {
        let params = DeHoogParams::rule_of_thumb(21, 0.0, 1.0, 2.0, DEFAULT_TOLERANCE).unwrap();
        let inv = run(|_| Complex64::new(0.0, 0.0), 0.5, &params);
        assert_eq!(inv.value, 0.0);
        assert!(inv.flags.contains(Flags::QD_BREAKDOWN));
    }

    #[test]
    fn nodes_on_vertical_line() {
        let params = DeHoogParams::new(4.0, 1.5, 3).unwrap();
        let nodes = params.nodes();
        assert_eq!(nodes.len(), 7);
        assert!(nodes.iter().all(|p| p.re == 1.5));
        assert!((nodes[4].im - PI).abs() < 1e-15);
    }

    #[test]
    fn agrees_with_long_direct_sum() {
        // The plain sum truncates with error O(N^-(k-1)) for images decaying
        // like p^-k, so only fast-decaying images make a fair comparison.
        let images: [fn(Complex64) -> Complex64; 2] = [|p| (p + 1.0).powi(-3), |p| (p * p + 1.0).powi(-2)];
        let short = DeHoogParams::rule_of_thumb(41, 0.0, 2.0, 2.0, DEFAULT_TOLERANCE).unwrap();
        let long = DeHoogParams { m: 5_000, ..short };
        for image in images {
            let values: Vec<Complex64> = long.nodes().into_iter().map(image).collect();
            for t in [0.3, 1.0, 1.7] {
                let acc = run(image, t, &short).value;
                let direct = fourier_direct_sum(&values, t, long.period, long.gamma);
                assert!((acc - direct).abs() < 1e-6, "t={t}: {acc} vs {direct}");
            }
        }
    }

    #[test]
    fn invalid_parameters() {
        assert!(DeHoogParams::new(0.0, 1.0, 3).is_err());
        assert!(DeHoogParams::new(1.0, 1.0, 0).is_err());
        assert!(DeHoogParams::rule_of_thumb(41, 0.0, 1.0, 2.0, 0.0).is_err());
        let params = DeHoogParams::new(1.0, 1.0, 2).unwrap();
        assert!(dehoog_invert(&[Complex64::new(1.0, 0.0); 4], 1.0, &params).is_err());
        assert!(dehoog_invert(&[Complex64::new(1.0, 0.0); 5], 0.0, &params).is_err());
    }
}
