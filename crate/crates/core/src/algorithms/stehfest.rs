//! Gaver-Stehfest inversion on the real axis.

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use std::f64::consts::LN_2;
use std::sync::OnceLock;

use crate::error::{Error, Result};

/// Largest `N` accepted without an explicit override.
pub const DEFAULT_MAX_TERMS: usize = 18;

const COMPLEX_TOLERANCE: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StehfestParams {
    /// Samples per time, `k = 1..=samples`.
    samples: usize,
    allow_large: bool,
}

impl StehfestParams {
    /// `n` must be even and at most [`DEFAULT_MAX_TERMS`].
    pub fn new(n: usize) -> Result<Self> {
        Self::build(n, false)
    }

    pub fn with_override(n: usize) -> Result<Self> {
        Self::build(n, true)
    }

    /// Parameters for a per-time budget of `terms` image samples.
    ///
    /// The coefficient sum uses `N/2` in integer arithmetic, so an odd
    /// budget behaves as `N = terms - 1` with a zero weight on the last
    /// sample.
    pub fn from_terms(terms: usize, allow_large: bool) -> Result<Self> {
        if terms < 2 {
            return Err(Error::InvalidArgument("Stehfest needs at least 2 terms".into()));
        }
        let params = StehfestParams { samples: terms, allow_large };
        params.check_limit()?;
        Ok(params)
    }

    fn build(n: usize, allow_large: bool) -> Result<Self> {
        if n < 2 || !n.is_multiple_of(2) {
            return Err(Error::InvalidArgument(format!("Stehfest N must be even and >= 2, got {n}")));
        }
        let params = StehfestParams { samples: n, allow_large };
        params.check_limit()?;
        Ok(params)
    }

    fn check_limit(&self) -> Result<()> {
        if self.effective_n() > DEFAULT_MAX_TERMS && !self.allow_large {
            return Err(Error::InvalidArgument(format!(
                "Stehfest N = {} exceeds {DEFAULT_MAX_TERMS}; cancellation dominates in double precision",
                self.effective_n()
            )));
        }
        Ok(())
    }

    pub fn samples(&self) -> usize {
        self.samples
    }

    /// The even order whose weights are applied.
    pub fn effective_n(&self) -> usize {
        self.samples & !1
    }

    /// `p_k = k ln2 / t` for `k = 1..=samples`.
    pub fn nodes(&self, t: f64) -> Vec<f64> {
        let step = LN_2 / t;
        (1..=self.samples).map(|k| k as f64 * step).collect()
    }

    fn weights(&self) -> Vec<f64> {
        let mut w = cached_weights(self.effective_n());
        w.resize(self.samples, 0.0);
        w
    }
}

fn factorial(n: usize) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, k| acc * BigInt::from(k))
}

/// Exact coefficients `V_1..V_N` for even `N`.
pub fn stehfest_weights_exact(n: usize) -> Result<Vec<BigRational>> {
    if n < 2 || !n.is_multiple_of(2) {
        return Err(Error::InvalidArgument(format!("Stehfest N must be even and >= 2, got {n}")));
    }
    let half = n / 2;
    let mut weights = Vec::with_capacity(n);
    for k in 1..=n {
        let mut sum = BigRational::zero();
        for j in k.div_ceil(2)..=k.min(half) {
            let num = BigInt::from(j).pow(half as u32) * factorial(2 * j);
            let den = factorial(half - j) * factorial(j) * factorial(j - 1) * factorial(k - j) * factorial(2 * j - k);
            sum += BigRational::new(num, den);
        }
        if (k + half) % 2 == 1 {
            sum = -sum;
        }
        weights.push(sum);
    }
    Ok(weights)
}

/// Coefficients rounded to `f64`. `N` must be even; `N > 18` needs
/// [`StehfestParams::with_override`] at the call sites that consume them.
pub fn stehfest_weights(n: usize) -> Result<Vec<f64>> {
    if n < 2 || !n.is_multiple_of(2) {
        return Err(Error::InvalidArgument(format!("Stehfest N must be even and >= 2, got {n}")));
    }
    Ok(cached_weights(n))
}

const CACHED_ORDERS: usize = 32;

fn cached_weights(n: usize) -> Vec<f64> {
    static TABLE: OnceLock<Vec<Vec<f64>>> = OnceLock::new();
    let table = TABLE.get_or_init(|| {
        (0..=CACHED_ORDERS).map(|m| if m >= 2 && m % 2 == 0 { round_weights(m) } else { Vec::new() }).collect()
    });
    match table.get(n) {
        Some(w) if !w.is_empty() => w.clone(),
        _ => round_weights(n),
    }
}

fn round_weights(n: usize) -> Vec<f64> {
    stehfest_weights_exact(n).expect("even order").iter().map(|v| v.to_f64().unwrap_or(f64::NAN)).collect()
}

/// `(ln2/t) Σ V_k f̄(k ln2 / t)`.
///
/// `values[k-1]` must hold `f̄(k ln2 / t)`.
pub fn stehfest_invert(values: &[Complex64], t: f64, params: &StehfestParams) -> Result<f64> {
    super::check_time(t)?;
    if values.len() != params.samples {
        return Err(Error::PlanMismatch(format!("Stehfest expects {} samples, got {}", params.samples, values.len())));
    }
    let step = LN_2 / t;
    let weights = params.weights();
    let mut sum = 0.0;
    for (k, (v, w)) in values.iter().zip(&weights).enumerate() {
        if v.im.abs() > COMPLEX_TOLERANCE * v.norm().max(f64::MIN_POSITIVE) {
            return Err(Error::ComplexSample { p: Complex64::new((k + 1) as f64 * step, 0.0), value: *v });
        }
        sum += w * v.re;
    }
    Ok(step * sum)
}
