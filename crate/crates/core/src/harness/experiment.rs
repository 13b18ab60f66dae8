//! Running the boundary-element experiments end to end.

use num_complex::Complex64;
use rayon::prelude::*;

use super::config::ExperimentConfig;
use crate::bem::{discretize_rectangle, steady_state, BemImage, SideConditions};
use crate::error::Result;
use crate::flags::Flags;
use crate::grid::{make_time_grid, Spacing, TimeGrid};
use crate::invert::invert_all;
use crate::oracles::{benchmark_time_series_1d, crank_nicolson_1d, ReferenceSeries, TimeBehavior};
use crate::plan::{plan_samples, InversionMethodParams, Method};
use crate::sampling::evaluate_channels;

const SERIES_TERMS: usize = 400;
const FD_INTERVALS: usize = 300;
const FD_STEP: f64 = 1e-3;
/// Relative error beyond which a value is flagged inaccurate.
pub const INACCURACY_TOLERANCE: f64 = 0.1;
/// Relative errors are taken against `max(|ref|, FLOOR · max|ref|)`.
const REFERENCE_FLOOR: f64 = 1e-2;

/// One method's inverted potential and flux on the experiment grid.
#[derive(Debug, Clone, PartialEq)]
pub struct MethodSeries {
    pub method: Method,
    pub times: Vec<f64>,
    pub potential: Vec<f64>,
    pub flux: Vec<f64>,
    pub flags: Vec<Flags>,
    /// Image evaluations counted while sampling.
    pub evaluations: usize,
    /// Raw samples before deduplication.
    pub requested: usize,
    /// Distinct samples the plan predicted.
    pub planned: usize,
    /// Relative potential error per time against the reference.
    pub potential_error: Vec<f64>,
    pub flux_error: Vec<f64>,
}

impl MethodSeries {
    pub fn max_potential_error(&self) -> f64 {
        self.potential_error.iter().copied().fold(0.0, f64::max)
    }

    pub fn failures(&self) -> usize {
        self.flags.iter().filter(|f| f.is_failure()).count()
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ExperimentResult {
    pub config: ExperimentConfig,
    pub grid: TimeGrid,
    pub methods: Vec<MethodSeries>,
    /// Eigenfunction series; absent for the cosine behaviour.
    pub series: Option<ReferenceSeries>,
    pub fd: ReferenceSeries,
}

impl ExperimentResult {
    /// The reference the errors are measured against.
    pub fn reference(&self) -> &ReferenceSeries {
        self.series.as_ref().unwrap_or(&self.fd)
    }

    pub fn method(&self, m: Method) -> Option<&MethodSeries> {
        self.methods.iter().find(|s| s.method == m)
    }
}

fn series_reference(x: f64, grid: &TimeGrid, behavior: TimeBehavior) -> Result<Option<ReferenceSeries>> {
    if behavior == TimeBehavior::Cosine4t {
        return Ok(None);
    }
    let mut out = ReferenceSeries { times: grid.times().to_vec(), potential: Vec::new(), flux: Vec::new() };
    for &t in grid.times() {
        let v = benchmark_time_series_1d(x, t, behavior, SERIES_TERMS)?;
        out.potential.push(v.potential);
        out.flux.push(v.flux);
    }
    Ok(Some(out))
}

/// `|v − r| / max(|r|, floor)` per time.
pub fn relative_errors(values: &[f64], reference: &[f64]) -> Vec<f64> {
    let peak = reference.iter().fold(0.0f64, |m, v| m.max(v.abs()));
    let floor = (REFERENCE_FLOOR * peak).max(f64::MIN_POSITIVE);
    values
        .iter()
        .zip(reference)
        .map(|(v, r)| {
            let e = (v - r).abs() / r.abs().max(floor);
            if e.is_nan() {
                f64::INFINITY
            } else {
                e
            }
        })
        .collect()
}

pub fn run_experiment(config: &ExperimentConfig) -> Result<ExperimentResult> {
    config.validate()?;
    let behavior = config.experiment.behavior();
    let grid = if config.n_times == 1 {
        TimeGrid::from_times(vec![config.t_max])?
    } else {
        make_time_grid(config.t_min, config.t_max, config.n_times, Spacing::Logarithmic)?
    };
    let mesh = discretize_rectangle(3.0, 2.0, config.mesh_density, &SideConditions::benchmark())?;
    let x = config.observation;
    let model = BemImage::new(mesh.clone(), config.diffusivity, x, move |p: Complex64| behavior.image(p))?;
    let steady = match behavior.steady_factor() {
        Some(factor) => {
            let v = steady_state(&mesh, x)?;
            (factor * v.potential.re, -factor * v.gradient[0].re)
        }
        None => (0.0, 0.0),
    };
    let series = series_reference(x[0], &grid, behavior)?;
    let fd = crank_nicolson_1d(x[0], &grid, behavior, FD_INTERVALS, FD_STEP.min(grid.t_min()))?;
    let reference = series.as_ref().unwrap_or(&fd).clone();

    let methods = config
        .methods
        .par_iter()
        .map(|&method| {
            let base = InversionMethodParams { delay: behavior.delay(), ..Default::default() };
            let plan = plan_samples(method, &grid, config.terms, config.experiment.strategy(), &base)?;
            let sets = evaluate_channels(&plan, &model)?;
            let potential_params = InversionMethodParams { steady_state: steady.0, ..base.clone() };
            let flux_params = InversionMethodParams { steady_state: steady.1, ..base };
            let pot = invert_all(method, &sets[0], &grid, &potential_params)?;
            let flx = invert_all(method, &sets[1], &grid, &flux_params)?;
            let potential_error = relative_errors(&pot.values, &reference.potential);
            let flux_error = relative_errors(&flx.values, &reference.flux);
            let flags = pot
                .flags
                .iter()
                .zip(&flx.flags)
                .zip(&potential_error)
                .map(|((a, b), e)| {
                    let mut f = *a | *b;
                    if e.is_nan() || *e > INACCURACY_TOLERANCE {
                        f |= Flags::INACCURATE;
                    }
                    f
                })
                .collect();
            Ok(MethodSeries {
                method,
                times: grid.times().to_vec(),
                potential: pot.values,
                flux: flx.values,
                flags,
                evaluations: sets[0].evaluations(),
                requested: plan.requested,
                planned: plan.total_evaluations(),
                potential_error,
                flux_error,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(ExperimentResult { config: config.clone(), grid, methods, series, fd })
}
