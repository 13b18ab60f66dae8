//! Evaluating an image function at the points of a [`SamplePlan`].

use num_complex::Complex64;
use rayon::prelude::*;
use std::sync::atomic::{AtomicUsize, Ordering};

use crate::error::{Error, Result};
use crate::image::{ImageFunction, MultiImage, SampleStatus};
use crate::plan::{PlanGroup, SamplePlan};

/// A plan together with its evaluated image values, aligned by index.
#[derive(Debug, Clone, PartialEq)]
pub struct SampleSet {
    plan: SamplePlan,
    values: Vec<Complex64>,
    status: Vec<SampleStatus>,
    evaluations: usize,
}

impl SampleSet {
    /// Wraps externally computed values; `values[k]` belongs to `plan.points[k]`.
    pub fn from_values(plan: SamplePlan, values: Vec<Complex64>) -> Result<Self> {
        if values.len() != plan.len() {
            return Err(Error::PlanMismatch(format!(
                "plan has {} points but {} values were given",
                plan.len(),
                values.len()
            )));
        }
        let status = values.iter().copied().map(SampleStatus::classify).collect();
        let evaluations = values.len();
        Ok(SampleSet { plan, values, status, evaluations })
    }

    pub fn plan(&self) -> &SamplePlan {
        &self.plan
    }

    pub fn values(&self) -> &[Complex64] {
        &self.values
    }

    pub fn status(&self) -> &[SampleStatus] {
        &self.status
    }

    /// Calls made to the image function while filling this set.
    pub fn evaluations(&self) -> usize {
        self.evaluations
    }

    /// Raw sample vector for one group, in the order its inverter expects.
    pub fn group_values(&self, group: &PlanGroup) -> Vec<Complex64> {
        group.indices.iter().map(|&k| self.values[k]).collect()
    }

    /// Whether any sample used by `group` is non-finite.
    pub fn group_has_non_finite(&self, group: &PlanGroup) -> bool {
        group.indices.iter().any(|&k| !self.values[k].is_finite())
    }
}

/// Evaluates `f` once per distinct plan point, in parallel.
pub fn evaluate_image<F: ImageFunction + ?Sized>(plan: &SamplePlan, f: &F) -> Result<SampleSet> {
    let counter = AtomicUsize::new(0);
    let values = plan
        .points
        .par_iter()
        .map(|&p| {
            counter.fetch_add(1, Ordering::Relaxed);
            f.eval(p).map_err(|e| Error::Image { p, message: e.0 })
        })
        .collect::<Result<Vec<_>>>()?;
    let mut set = SampleSet::from_values(plan.clone(), values)?;
    set.evaluations = counter.into_inner();
    Ok(set)
}

/// Evaluates a multi-channel image once per distinct point and splits the
/// result into one [`SampleSet`] per channel.
pub fn evaluate_channels<F: MultiImage + ?Sized>(plan: &SamplePlan, f: &F) -> Result<Vec<SampleSet>> {
    let counter = AtomicUsize::new(0);
    let channels = f.channels();
    let rows = plan
        .points
        .par_iter()
        .map(|&p| {
            counter.fetch_add(1, Ordering::Relaxed);
            let row = f.eval_channels(p).map_err(|e| Error::Image { p, message: e.0 })?;
            if row.len() != channels {
                return Err(Error::Image { p, message: format!("expected {channels} channels, got {}", row.len()) });
            }
            Ok(row)
        })
        .collect::<Result<Vec<_>>>()?;
    let evaluations = counter.into_inner();
    (0..channels)
        .map(|c| {
            let mut set = SampleSet::from_values(plan.clone(), rows.iter().map(|r| r[c]).collect())?;
            set.evaluations = evaluations;
            Ok(set)
        })
        .collect()
}
