use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Spacing {
    Logarithmic,
    Linear,
    Explicit,
}

/// Strictly increasing, strictly positive output times.
#[derive(Debug, Clone, PartialEq)]
pub struct TimeGrid {
    times: Vec<f64>,
    spacing: Spacing,
}

impl TimeGrid {
    pub fn from_times(times: Vec<f64>) -> Result<Self> {
        if times.is_empty() {
            return Err(Error::InvalidArgument("time grid is empty".into()));
        }
        if times.iter().any(|t| !(t.is_finite() && *t > 0.0)) {
            return Err(Error::InvalidArgument("times must be finite and > 0".into()));
        }
        if times.windows(2).any(|w| w[1] <= w[0]) {
            return Err(Error::InvalidArgument("times must be strictly increasing".into()));
        }
        Ok(TimeGrid { times, spacing: Spacing::Explicit })
    }

    pub fn times(&self) -> &[f64] {
        &self.times
    }

    pub fn spacing(&self) -> Spacing {
        self.spacing
    }

    pub fn len(&self) -> usize {
        self.times.len()
    }

    pub fn is_empty(&self) -> bool {
        self.times.is_empty()
    }

    pub fn t_min(&self) -> f64 {
        self.times[0]
    }

    pub fn t_max(&self) -> f64 {
        self.times[self.times.len() - 1]
    }
}

/// Build `n` times spanning `[t_min, t_max]`.
///
/// Explicit spacing only makes sense for a single point here; use
/// [`TimeGrid::from_times`] for arbitrary lists.
pub fn make_time_grid(t_min: f64, t_max: f64, n: usize, spacing: Spacing) -> Result<TimeGrid> {
    if !(t_min.is_finite() && t_min > 0.0) {
        return Err(Error::InvalidArgument(format!("t_min must be > 0, got {t_min}")));
    }
    if n == 0 {
        return Err(Error::InvalidArgument("a time grid needs at least one point".into()));
    }
    if n == 1 {
        if t_max != t_min {
            return Err(Error::InvalidArgument("a single-point grid needs t_min == t_max".into()));
        }
        return Ok(TimeGrid { times: vec![t_min], spacing });
    }
    if !(t_max.is_finite() && t_max > t_min) {
        return Err(Error::InvalidArgument(format!("need t_min < t_max, got [{t_min}, {t_max}]")));
    }
    let last = (n - 1) as f64;
    let times: Vec<f64> = match spacing {
        Spacing::Linear => (0..n).map(|i| t_min + (t_max - t_min) * i as f64 / last).collect(),
        Spacing::Logarithmic => {
            let (a, b) = (t_min.log10(), t_max.log10());
            (0..n).map(|i| 10f64.powf(a + (b - a) * i as f64 / last)).collect()
        }
        Spacing::Explicit => {
            return Err(Error::InvalidArgument("explicit grids are built from a list of times".into()))
        }
    };
    let mut times = times;
    times[0] = t_min;
    times[n - 1] = t_max;
    Ok(TimeGrid { times, spacing })
}
