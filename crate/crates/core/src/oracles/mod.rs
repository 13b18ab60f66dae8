//! Reference solutions: analytic transform pairs, exact solutions of the
//! one-dimensional benchmark and a finite-difference time march.

pub mod benchmark;
pub mod fd;
pub mod pairs;

pub use benchmark::{benchmark_flux_laplace_1d, benchmark_laplace_1d, benchmark_time_series_1d, SeriesValue};
pub use fd::{crank_nicolson_1d, ReferenceSeries};
pub use pairs::{pair, pair_catalog, AnalyticPair, TimeBehavior, BENCHMARK_DELAY};
