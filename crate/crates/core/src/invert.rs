//! Dispatching a [`SampleSet`] to the inverter its plan was built for.

use crate::algorithms::{
    dehoog_invert, schapery_eval, schapery_fit, stehfest_invert, talbot_invert, weeks_coefficients, weeks_eval,
    Inversion, SchaperyParams,
};
use crate::error::{Error, Result};
use crate::flags::Flags;
use crate::grid::TimeGrid;
use crate::plan::{GroupParams, InversionMethodParams, Method};
use crate::sampling::SampleSet;

/// Inverted values on a time grid.
#[derive(Debug, Clone, PartialEq)]
pub struct TimeSeriesResult {
    pub method: Method,
    pub times: Vec<f64>,
    pub values: Vec<f64>,
    pub flags: Vec<Flags>,
    /// Image evaluations that produced the samples.
    pub evaluations: usize,
}

impl TimeSeriesResult {
    pub fn len(&self) -> usize {
        self.times.len()
    }

    pub fn is_empty(&self) -> bool {
        self.times.is_empty()
    }

    pub fn failures(&self) -> usize {
        self.flags.iter().filter(|f| f.is_failure()).count()
    }
}

fn failed(flags: Flags) -> Inversion {
    Inversion::flagged(f64::NAN, flags)
}

/// Inverts every time of `grid` from `samples`.
///
/// Schapery's steady-state value is read from `params`, not from the plan.
///
/// Numerically degenerate times yield flagged values rather than errors.
pub fn invert_all(
    method: Method,
    samples: &SampleSet,
    grid: &TimeGrid,
    params: &InversionMethodParams,
) -> Result<TimeSeriesResult> {
    let plan = samples.plan();
    if plan.method != method {
        return Err(Error::PlanMismatch(format!("plan is for {}, not {method}", plan.method)));
    }
    let times = grid.times();
    let mut out: Vec<Option<Inversion>> = vec![None; times.len()];
    for group in &plan.groups {
        if group.params.method() != method {
            return Err(Error::PlanMismatch("group parameters disagree with the plan method".into()));
        }
        let values = samples.group_values(group);
        let non_finite = values.iter().any(|v| !v.is_finite());
        let mut results = Vec::with_capacity(group.times.len());
        match &group.params {
            GroupParams::Stehfest(sp) => {
                for &i in &group.times {
                    let t = *times.get(i).ok_or_else(|| mismatch(i))?;
                    results.push(if non_finite {
                        failed(Flags::NON_FINITE_SAMPLE)
                    } else {
                        Inversion::ok(stehfest_invert(&values, t, sp)?)
                    });
                }
            }
            GroupParams::Schapery(planned) => {
                // f_s comes from `params` so one sample set can serve several channels.
                let sp = &SchaperyParams { steady: params.steady_state, ..planned.clone() };
                let fit = if non_finite { None } else { Some(schapery_fit(&values, sp)) };
                for &i in &group.times {
                    let t = *times.get(i).ok_or_else(|| mismatch(i))?;
                    results.push(match &fit {
                        None => failed(Flags::NON_FINITE_SAMPLE),
                        Some(Err(Error::Singular { .. })) => failed(Flags::ILL_CONDITIONED),
                        Some(Err(e)) => return Err(clone_error(e)),
                        Some(Ok(fit)) => {
                            let value = schapery_eval(&fit.coefficients, &sp.nodes, sp.steady, t)?;
                            let flags = if fit.ill_conditioned() { Flags::ILL_CONDITIONED } else { Flags::empty() };
                            Inversion::flagged(value, flags)
                        }
                    });
                }
            }
            GroupParams::Weeks(wp) => {
                let coefficients = weeks_coefficients(&values, wp)?;
                for &i in &group.times {
                    let t = *times.get(i).ok_or_else(|| mismatch(i))?;
                    let mut inv =
                        if non_finite { failed(Flags::NON_FINITE_SAMPLE) } else { weeks_eval(&coefficients, wp, t)? };
                    if params.delay.is_some_and(|tau| t < tau) {
                        inv.flags |= Flags::UNDEFINED_BEFORE_DELAY;
                    }
                    results.push(inv);
                }
            }
            GroupParams::Talbot(tp) => {
                for &i in &group.times {
                    let t = *times.get(i).ok_or_else(|| mismatch(i))?;
                    results.push(talbot_invert(&values, t, tp)?);
                }
            }
            GroupParams::DeHoog(dp) => {
                for &i in &group.times {
                    let t = *times.get(i).ok_or_else(|| mismatch(i))?;
                    results.push(dehoog_invert(&values, t, dp)?);
                }
            }
        }
        for (&i, inv) in group.times.iter().zip(results) {
            out[i] = Some(inv);
        }
    }
    let mut values = Vec::with_capacity(times.len());
    let mut flags = Vec::with_capacity(times.len());
    for (i, inv) in out.into_iter().enumerate() {
        let inv = inv.ok_or_else(|| Error::PlanMismatch(format!("time index {i} is not covered by the plan")))?;
        values.push(inv.value);
        flags.push(inv.flags);
    }
    Ok(TimeSeriesResult { method, times: times.to_vec(), values, flags, evaluations: samples.evaluations() })
}

fn mismatch(i: usize) -> Error {
    Error::PlanMismatch(format!("plan refers to time index {i} outside the grid"))
}

fn clone_error(e: &Error) -> Error {
    match e {
        Error::ComplexSample { p, value } => Error::ComplexSample { p: *p, value: *value },
        other => Error::PlanMismatch(other.to_string()),
    }
}
