//! Numerical inverse Laplace transforms.
//!
//! Five inverters (Gaver-Stehfest, Schapery, Weeks, fixed Talbot and the
//! de Hoog accelerated Fourier series) share one image-function contract
//! and a sample planner that lets many output times reuse the same
//! Laplace-space evaluations. A constant-element boundary-element solver
//! for the modified Helmholtz equation and a set of reference solutions
//! provide an end-to-end diffusion benchmark.

pub mod algorithms;
pub mod bem;
pub mod error;
pub mod flags;
pub mod grid;
pub mod harness;
pub mod image;
pub mod invert;
pub mod oracles;
pub mod plan;
pub mod sampling;
pub mod specfun;

pub use error::{Error, Result};
pub use flags::Flags;
pub use grid::{make_time_grid, Spacing, TimeGrid};
pub use image::{FnImage, ImageEvalError, ImageFunction, MultiImage, SampleStatus};
pub use invert::{invert_all, TimeSeriesResult};
pub use num_complex::Complex64;
pub use plan::{plan_samples, InversionMethodParams, Method, SamplePlan, SamplingStrategy};
pub use sampling::{evaluate_channels, evaluate_image, SampleSet};
