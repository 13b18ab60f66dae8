//! Inverting analytic pairs to measure algorithm error without a model.

use crate::error::Result;
use crate::grid::TimeGrid;
use crate::invert::invert_all;
use crate::oracles::AnalyticPair;
use crate::plan::{plan_samples, InversionMethodParams, Method, SamplingStrategy};
use crate::sampling::evaluate_image;

#[derive(Debug, Clone, PartialEq)]
pub struct PairError {
    pub method: Method,
    pub pair: &'static str,
    pub max_relative: f64,
    pub mean_relative: f64,
    pub max_absolute: f64,
    pub evaluations: usize,
    pub failures: usize,
}

/// Stehfest samples per time; every other method shares one vector over the grid.
pub fn strategy_for(method: Method) -> SamplingStrategy {
    if method.supports(SamplingStrategy::SharedGlobal) {
        SamplingStrategy::SharedGlobal
    } else {
        SamplingStrategy::PerTimeOptimal
    }
}

pub fn invert_pair(
    method: Method,
    pair: &AnalyticPair,
    terms: usize,
    grid: &TimeGrid,
) -> Result<(Vec<f64>, usize, usize)> {
    let params = InversionMethodParams {
        sigma: pair.abscissa.max(0.0),
        delay: pair.delay,
        steady_state: pair.steady.unwrap_or(0.0),
        ..Default::default()
    };
    let plan = plan_samples(method, grid, terms, strategy_for(method), &params)?;
    let samples = evaluate_image(&plan, pair)?;
    let result = invert_all(method, &samples, grid, &params)?;
    let failures = result.failures();
    Ok((result.values, samples.evaluations(), failures))
}

/// Maximum and mean relative error for every `(method, pair)` over `grid`.
pub fn run_pairs_benchmark(
    methods: &[Method],
    pairs: &[AnalyticPair],
    terms: usize,
    grid: &TimeGrid,
) -> Result<Vec<PairError>> {
    let mut out = Vec::with_capacity(methods.len() * pairs.len());
    for &method in methods {
        for pair in pairs {
            let (values, evaluations, failures) = invert_pair(method, pair, terms, grid)?;
            let mut max_relative = 0.0f64;
            let mut max_absolute = 0.0f64;
            let mut sum = 0.0;
            for (&t, v) in grid.times().iter().zip(&values) {
                let exact = (pair.time)(t);
                let abs = (v - exact).abs();
                let rel = if exact != 0.0 { abs / exact.abs() } else { abs };
                let rel = if rel.is_nan() { f64::INFINITY } else { rel };
                max_relative = max_relative.max(rel);
                max_absolute = max_absolute.max(if abs.is_nan() { f64::INFINITY } else { abs });
                sum += rel;
            }
            out.push(PairError {
                method,
                pair: pair.name,
                max_relative,
                mean_relative: sum / values.len() as f64,
                max_absolute,
                evaluations,
                failures,
            });
        }
    }
    Ok(out)
}
