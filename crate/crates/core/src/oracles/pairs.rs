//! Closed-form Laplace transform pairs and the benchmark time behaviours.

use num_complex::Complex64;
use std::fmt;
use std::str::FromStr;

use crate::error::Error;
use crate::image::{ImageEvalError, ImageFunction};

/// Onset time of the benchmark's delayed step.
pub const BENCHMARK_DELAY: f64 = 0.08;

/// Time factor `f_t(t)` multiplying the spatial boundary data.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum TimeBehavior {
    Heaviside,
    Cosine4t,
    DelayedStep(f64),
}

impl TimeBehavior {
    pub fn image(self, p: Complex64) -> Complex64 {
        match self {
            TimeBehavior::Heaviside => p.inv(),
            TimeBehavior::Cosine4t => p / (p * p + 16.0),
            TimeBehavior::DelayedStep(tau) => (-tau * p).exp() / p,
        }
    }

    /// `f_t(t)`, taking the midpoint value at a jump.
    pub fn value(self, t: f64) -> f64 {
        match self {
            TimeBehavior::Heaviside => step(t),
            TimeBehavior::Cosine4t => {
                if t < 0.0 {
                    0.0
                } else if t == 0.0 {
                    0.5
                } else {
                    (4.0 * t).cos()
                }
            }
            TimeBehavior::DelayedStep(tau) => step(t - tau),
        }
    }

    /// `lim_{s→t⁺} f_t(s)`.
    pub fn right_limit(self, t: f64) -> f64 {
        match self {
            TimeBehavior::Heaviside => f64::from(u8::from(t >= 0.0)),
            TimeBehavior::Cosine4t => {
                if t >= 0.0 {
                    (4.0 * t).cos()
                } else {
                    0.0
                }
            }
            TimeBehavior::DelayedStep(tau) => f64::from(u8::from(t >= tau)),
        }
    }

    /// `lim_{s→t⁻} f_t(s)`.
    pub fn left_limit(self, t: f64) -> f64 {
        match self {
            TimeBehavior::Heaviside => f64::from(u8::from(t > 0.0)),
            TimeBehavior::Cosine4t => {
                if t > 0.0 {
                    (4.0 * t).cos()
                } else {
                    0.0
                }
            }
            TimeBehavior::DelayedStep(tau) => f64::from(u8::from(t > tau)),
        }
    }

    /// Times at which `f_t` jumps.
    pub fn discontinuities(self) -> Vec<f64> {
        match self {
            TimeBehavior::Heaviside | TimeBehavior::Cosine4t => vec![0.0],
            TimeBehavior::DelayedStep(tau) => vec![0.0, tau],
        }
    }

    pub fn delay(self) -> Option<f64> {
        match self {
            TimeBehavior::DelayedStep(tau) => Some(tau),
            _ => None,
        }
    }

    /// `lim_{t→∞} f_t(t)` when it exists.
    pub fn steady_factor(self) -> Option<f64> {
        match self {
            TimeBehavior::Heaviside | TimeBehavior::DelayedStep(_) => Some(1.0),
            TimeBehavior::Cosine4t => None,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            TimeBehavior::Heaviside => "heaviside",
            TimeBehavior::Cosine4t => "cosine",
            TimeBehavior::DelayedStep(_) => "delayed-step",
        }
    }
}

impl fmt::Display for TimeBehavior {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for TimeBehavior {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        match s.trim().to_ascii_lowercase().as_str() {
            "heaviside" | "step" => Ok(TimeBehavior::Heaviside),
            "cosine" | "cos4t" => Ok(TimeBehavior::Cosine4t),
            "delayed-step" | "delayed" => Ok(TimeBehavior::DelayedStep(BENCHMARK_DELAY)),
            other => Err(Error::InvalidArgument(format!("unknown time behaviour '{other}'"))),
        }
    }
}

fn step(t: f64) -> f64 {
    if t > 0.0 {
        1.0
    } else if t == 0.0 {
        0.5
    } else {
        0.0
    }
}

/// An image function with a known inverse.
#[derive(Clone, Copy)]
pub struct AnalyticPair {
    pub name: &'static str,
    pub image: fn(Complex64) -> Complex64,
    pub time: fn(f64) -> f64,
    /// Largest real part of any singularity of the image.
    pub abscissa: f64,
    pub delay: Option<f64>,
    /// `lim_{t→∞} f(t)` when it exists.
    pub steady: Option<f64>,
    /// `f(t)` oscillates or jumps, outside what real-axis methods handle.
    pub oscillatory: bool,
}

impl fmt::Debug for AnalyticPair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("AnalyticPair").field("name", &self.name).finish_non_exhaustive()
    }
}

impl ImageFunction for AnalyticPair {
    fn eval(&self, p: Complex64) -> Result<Complex64, ImageEvalError> {
        Ok((self.image)(p))
    }

    fn abscissa(&self) -> Option<f64> {
        Some(self.abscissa)
    }

    fn delay(&self) -> Option<f64> {
        self.delay
    }
}

pub fn pair_catalog() -> Vec<AnalyticPair> {
    vec![
        AnalyticPair {
            name: "1/p",
            image: |p| p.inv(),
            time: |_| 1.0,
            abscissa: 0.0,
            delay: None,
            steady: Some(1.0),
            oscillatory: false,
        },
        AnalyticPair {
            name: "1/p^2",
            image: |p| (p * p).inv(),
            time: |t| t,
            abscissa: 0.0,
            delay: None,
            steady: None,
            oscillatory: false,
        },
        AnalyticPair {
            name: "1/(p+1)",
            image: |p| (p + 1.0).inv(),
            time: |t| (-t).exp(),
            abscissa: -1.0,
            delay: None,
            steady: Some(0.0),
            oscillatory: false,
        },
        AnalyticPair {
            name: "1/(p^2+1)",
            image: |p| (p * p + 1.0).inv(),
            time: f64::sin,
            abscissa: 0.0,
            delay: None,
            steady: None,
            oscillatory: true,
        },
        AnalyticPair {
            name: "p/(p^2+16)",
            image: |p| p / (p * p + 16.0),
            time: |t| (4.0 * t).cos(),
            abscissa: 0.0,
            delay: None,
            steady: None,
            oscillatory: true,
        },
        AnalyticPair {
            name: "exp(-0.08p)/p",
            image: |p| TimeBehavior::DelayedStep(BENCHMARK_DELAY).image(p),
            time: |t| TimeBehavior::DelayedStep(BENCHMARK_DELAY).value(t),
            abscissa: 0.0,
            delay: Some(BENCHMARK_DELAY),
            steady: Some(1.0),
            oscillatory: true,
        },
    ]
}

/// Looks a pair up by name.
pub fn pair(name: &str) -> Option<AnalyticPair> {
    pair_catalog().into_iter().find(|p| p.name == name)
}
