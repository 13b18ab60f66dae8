//! The image-function contract: the only channel between inverters and the
//! models that produce Laplace-space values.

use num_complex::Complex64;
use std::fmt;

/// Error raised by a model while evaluating `f̄(p)`.
#[derive(Debug, Clone, PartialEq)]
pub struct ImageEvalError(pub String);

impl fmt::Display for ImageEvalError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for ImageEvalError {}

/// A Laplace-space function `p ↦ f̄(p)`.
///
/// Implementations must be deterministic and safe to call from several
/// worker threads at once.
pub trait ImageFunction: Sync {
    fn eval(&self, p: Complex64) -> Result<Complex64, ImageEvalError>;

    /// Abscissa of convergence, when known.
    fn abscissa(&self) -> Option<f64> {
        None
    }

    /// Known onset delay `τ` (e.g. `e^{-τp}/p`), when the image has one.
    fn delay(&self) -> Option<f64> {
        None
    }
}

/// An image that yields several related channels from one model solve,
/// e.g. potential and flux from a single BEM solution.
pub trait MultiImage: Sync {
    fn channels(&self) -> usize;
    fn eval_channels(&self, p: Complex64) -> Result<Vec<Complex64>, ImageEvalError>;
}

impl<F: ImageFunction> MultiImage for F {
    fn channels(&self) -> usize {
        1
    }

    fn eval_channels(&self, p: Complex64) -> Result<Vec<Complex64>, ImageEvalError> {
        self.eval(p).map(|v| vec![v])
    }
}

/// Wraps an infallible closure as an [`ImageFunction`].
pub struct FnImage<F> {
    f: F,
    abscissa: Option<f64>,
    delay: Option<f64>,
}

impl<F> FnImage<F>
where
    F: Fn(Complex64) -> Complex64 + Sync,
{
    pub fn new(f: F) -> Self {
        FnImage { f, abscissa: None, delay: None }
    }

    pub fn with_abscissa(mut self, sigma: f64) -> Self {
        self.abscissa = Some(sigma);
        self
    }

    pub fn with_delay(mut self, tau: f64) -> Self {
        self.delay = Some(tau);
        self
    }
}

impl<F> ImageFunction for FnImage<F>
where
    F: Fn(Complex64) -> Complex64 + Sync,
{
    fn eval(&self, p: Complex64) -> Result<Complex64, ImageEvalError> {
        Ok((self.f)(p))
    }

    fn abscissa(&self) -> Option<f64> {
        self.abscissa
    }

    fn delay(&self) -> Option<f64> {
        self.delay
    }
}

/// Magnitude above which a sample is reported as large.
pub const LARGE_MAGNITUDE: f64 = 1e4;
/// Magnitude beyond which unit-scale information is below rounding.
pub const OVERFLOW_MAGNITUDE: f64 = 1.0 / f64::EPSILON;

/// Classification of one evaluated sample.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SampleStatus {
    Finite,
    /// Finite but `|f̄| >= LARGE_MAGNITUDE`.
    Large,
    /// Non-finite, or so large that O(1) contributions are lost to rounding.
    Overflow,
}

impl SampleStatus {
    pub fn classify(value: Complex64) -> Self {
        if !value.is_finite() {
            return SampleStatus::Overflow;
        }
        let m = value.norm();
        if m >= OVERFLOW_MAGNITUDE {
            SampleStatus::Overflow
        } else if m >= LARGE_MAGNITUDE {
            SampleStatus::Large
        } else {
            SampleStatus::Finite
        }
    }

    pub fn is_finite(self) -> bool {
        self != SampleStatus::Overflow
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn delayed_step_tail_magnitudes() {
        let f = |p: f64| (-0.08 * p).exp() / p;
        let moderate = Complex64::new(f(-200.0), 0.0);
        assert!((moderate.norm() - 16f64.exp() / 200.0).abs() < 1e-9 * moderate.norm());
        assert_eq!(SampleStatus::classify(moderate), SampleStatus::Large);
        for p in [-750.0, -900.0, -5000.0] {
            assert_eq!(SampleStatus::classify(Complex64::new(f(p), 0.0)), SampleStatus::Overflow, "p={p}");
        }
        assert_eq!(SampleStatus::classify(Complex64::new(0.5, 0.0)), SampleStatus::Finite);
    }
}
