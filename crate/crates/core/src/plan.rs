//! Sample planning: which Laplace parameters each method needs for a grid
//! of output times, and how those samples are shared between times.

use num_complex::Complex64;
use std::fmt;
use std::str::FromStr;

use crate::algorithms::{
    talbot_contour, weeks_nodes, DeHoogParams, SchaperyParams, StehfestParams, TalbotParams, WeeksParams,
};
use crate::error::{Error, Result};
use crate::grid::TimeGrid;

/// Relative tolerance under which two Laplace parameters are merged.
pub const DEDUP_TOLERANCE: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Method {
    Stehfest,
    Schapery,
    Weeks,
    Talbot,
    DeHoog,
}

/// What a method demands of `f̄` and of the sample layout.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Capabilities {
    /// Samples depend on each output time.
    pub time_dependent_p: bool,
    /// Samples depend on `t_max` of the group they serve.
    pub depends_on_t_max: bool,
    pub complex_p: bool,
    pub limitations: &'static str,
}

impl Method {
    pub const ALL: [Method; 5] = [Method::Stehfest, Method::Schapery, Method::Weeks, Method::Talbot, Method::DeHoog];

    pub fn name(self) -> &'static str {
        match self {
            Method::Stehfest => "stehfest",
            Method::Schapery => "schapery",
            Method::Weeks => "weeks",
            Method::Talbot => "talbot",
            Method::DeHoog => "dehoog",
        }
    }

    pub fn capabilities(self) -> Capabilities {
        let (time_dependent_p, depends_on_t_max, complex_p, limitations) = match self {
            Method::Stehfest => (true, false, false, "no oscillations, no discontinuities in f(t)"),
            Method::Schapery => (false, false, false, "smoothly varying f(t), steady state must exist"),
            Method::Weeks => (false, true, true, "none"),
            Method::Talbot => (false, true, true, "no high-frequency f(t), f̄(p) must exist as p → −∞"),
            Method::DeHoog => (false, true, true, "none"),
        };
        Capabilities { time_dependent_p, depends_on_t_max, complex_p, limitations }
    }

    pub fn supports(self, strategy: SamplingStrategy) -> bool {
        strategy == SamplingStrategy::PerTimeOptimal || !self.capabilities().time_dependent_p
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Method {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "stehfest" | "gaver-stehfest" => Ok(Method::Stehfest),
            "schapery" => Ok(Method::Schapery),
            "weeks" => Ok(Method::Weeks),
            "talbot" | "fixed-talbot" => Ok(Method::Talbot),
            "dehoog" | "de-hoog" | "fourier" => Ok(Method::DeHoog),
            other => Err(Error::InvalidArgument(format!("unknown method '{other}'"))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SamplingStrategy {
    PerTimeOptimal,
    SharedPerLogCycle,
    SharedGlobal,
}

impl SamplingStrategy {
    pub fn name(self) -> &'static str {
        match self {
            SamplingStrategy::PerTimeOptimal => "per-time",
            SamplingStrategy::SharedPerLogCycle => "per-log-cycle",
            SamplingStrategy::SharedGlobal => "global",
        }
    }
}

impl fmt::Display for SamplingStrategy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for SamplingStrategy {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "per-time" | "optimal" => Ok(SamplingStrategy::PerTimeOptimal),
            "per-log-cycle" | "log-cycle" => Ok(SamplingStrategy::SharedPerLogCycle),
            "global" | "shared" => Ok(SamplingStrategy::SharedGlobal),
            other => Err(Error::InvalidArgument(format!("unknown strategy '{other}'"))),
        }
    }
}

/// Free parameters shared by all methods. `None` selects the rule of thumb.
#[derive(Debug, Clone, PartialEq)]
pub struct InversionMethodParams {
    /// Abscissa of convergence σ.
    pub sigma: f64,
    /// Onset delay of the image, if known.
    pub delay: Option<f64>,
    /// Schapery's `f_s`.
    pub steady_state: f64,
    pub dehoog_tolerance: f64,
    /// `T = factor · t_max`.
    pub dehoog_period_factor: f64,
    pub schapery_nodes: Option<Vec<f64>>,
    /// Explicit `(κ, b)` for Weeks.
    pub weeks_override: Option<(f64, f64)>,
    pub talbot_r: Option<f64>,
    pub allow_large_stehfest: bool,
}

impl Default for InversionMethodParams {
    fn default() -> Self {
        InversionMethodParams {
            sigma: 0.0,
            delay: None,
            steady_state: 0.0,
            dehoog_tolerance: crate::algorithms::dehoog::DEFAULT_TOLERANCE,
            dehoog_period_factor: 2.0,
            schapery_nodes: None,
            weeks_override: None,
            talbot_r: None,
            allow_large_stehfest: false,
        }
    }
}

/// Method parameters resolved for one group of times.
#[derive(Debug, Clone, PartialEq)]
pub enum GroupParams {
    /// One parameter set per time in the group (Stehfest nodes scale with `t`).
    Stehfest(StehfestParams),
    Schapery(SchaperyParams),
    Weeks(WeeksParams),
    Talbot(TalbotParams),
    DeHoog(DeHoogParams),
}

impl GroupParams {
    pub fn method(&self) -> Method {
        match self {
            GroupParams::Stehfest(_) => Method::Stehfest,
            GroupParams::Schapery(_) => Method::Schapery,
            GroupParams::Weeks(_) => Method::Weeks,
            GroupParams::Talbot(_) => Method::Talbot,
            GroupParams::DeHoog(_) => Method::DeHoog,
        }
    }
}

/// A set of times inverted from one vector of samples.
#[derive(Debug, Clone, PartialEq)]
pub struct PlanGroup {
    /// Indices into the time grid.
    pub times: Vec<usize>,
    pub t_max: f64,
    pub params: GroupParams,
    /// For each raw sample of this group, its index in [`SamplePlan::points`].
    /// Stehfest groups hold one time, so this is that time's node list.
    pub indices: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SamplePlan {
    pub method: Method,
    pub strategy: SamplingStrategy,
    pub terms: usize,
    /// Distinct Laplace parameters in first-appearance order.
    pub points: Vec<Complex64>,
    pub groups: Vec<PlanGroup>,
    /// Raw sample count before deduplication.
    pub requested: usize,
}

impl SamplePlan {
    /// Number of distinct image evaluations the plan needs.
    pub fn total_evaluations(&self) -> usize {
        self.points.len()
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    /// The group serving grid index `i`.
    pub fn group_of(&self, i: usize) -> Option<&PlanGroup> {
        self.groups.iter().find(|g| g.times.contains(&i))
    }
}

fn same_point(a: Complex64, b: Complex64) -> bool {
    let close = |x: f64, y: f64| (x - y).abs() <= DEDUP_TOLERANCE * x.abs().max(y.abs());
    close(a.re, b.re) && close(a.im, b.im)
}

/// Merges near-identical points, keeping first-appearance order.
/// Returns the distinct points and, for each input, its distinct index.
pub fn dedup_points(raw: &[Complex64]) -> (Vec<Complex64>, Vec<usize>) {
    let mut points: Vec<Complex64> = Vec::new();
    // (re, slot) of the kept points, sorted by re
    let mut by_re: Vec<(f64, usize)> = Vec::new();
    let mut map = Vec::with_capacity(raw.len());
    for &p in raw {
        let window = 2.0 * DEDUP_TOLERANCE * p.re.abs();
        let lo = by_re.partition_point(|&(re, _)| re < p.re - window);
        let found = by_re[lo..]
            .iter()
            .take_while(|&&(re, _)| re <= p.re + window)
            .filter(|&&(_, k)| same_point(points[k], p))
            .map(|&(_, k)| k)
            .min();
        let slot = found.unwrap_or_else(|| {
            let k = points.len();
            points.push(p);
            let at = by_re.partition_point(|&(re, _)| re < p.re);
            by_re.insert(at, (p.re, k));
            k
        });
        map.push(slot);
    }
    (points, map)
}

/// Splits grid indices by `floor(log10 t)`.
pub fn log_cycle_groups(grid: &TimeGrid) -> Vec<Vec<usize>> {
    let mut groups: Vec<(i64, Vec<usize>)> = Vec::new();
    for (i, &t) in grid.times().iter().enumerate() {
        let cycle = (t.log10() + 1e-12).floor() as i64;
        match groups.last_mut() {
            Some((c, members)) if *c == cycle => members.push(i),
            _ => groups.push((cycle, vec![i])),
        }
    }
    groups.into_iter().map(|(_, m)| m).collect()
}

fn group_params(
    method: Method,
    terms: usize,
    t_min: f64,
    t_max: f64,
    params: &InversionMethodParams,
) -> Result<GroupParams> {
    Ok(match method {
        Method::Stehfest => GroupParams::Stehfest(StehfestParams::from_terms(terms, params.allow_large_stehfest)?),
        Method::Schapery => GroupParams::Schapery(match &params.schapery_nodes {
            Some(nodes) => SchaperyParams::new(nodes.clone(), params.steady_state)?,
            None => SchaperyParams::rule_of_thumb(terms, t_min, t_max, params.steady_state)?,
        }),
        Method::Weeks => {
            if terms < 2 {
                return Err(Error::InvalidArgument("Weeks needs at least 2 terms".into()));
            }
            let order = terms - 1;
            GroupParams::Weeks(match params.weeks_override {
                Some((kappa, b)) => WeeksParams::new(kappa, b, order, terms)?,
                None => WeeksParams::rule_of_thumb(order, params.sigma, t_max)?,
            })
        }
        Method::Talbot => GroupParams::Talbot(match params.talbot_r {
            Some(r) => TalbotParams::new(r, terms)?,
            None => TalbotParams::rule_of_thumb(terms, t_max)?,
        }),
        Method::DeHoog => GroupParams::DeHoog(DeHoogParams::rule_of_thumb(
            terms,
            params.sigma,
            t_max,
            params.dehoog_period_factor,
            params.dehoog_tolerance,
        )?),
    })
}

fn group_nodes(params: &GroupParams, t: f64) -> Vec<Complex64> {
    let real = |v: Vec<f64>| v.into_iter().map(|x| Complex64::new(x, 0.0)).collect();
    match params {
        GroupParams::Stehfest(s) => real(s.nodes(t)),
        GroupParams::Schapery(s) => real(s.nodes.clone()),
        GroupParams::Weeks(w) => weeks_nodes(w),
        GroupParams::Talbot(tp) => talbot_contour(tp.r, tp.n),
        GroupParams::DeHoog(d) => d.nodes(),
    }
}

/// Plans the image samples `method` needs to invert every time in `grid`.
///
/// `terms` is the per-group sample budget. Identical parameters across
/// groups are evaluated once.
pub fn plan_samples(
    method: Method,
    grid: &TimeGrid,
    terms: usize,
    strategy: SamplingStrategy,
    params: &InversionMethodParams,
) -> Result<SamplePlan> {
    if grid.is_empty() {
        return Err(Error::InvalidArgument("time grid is empty".into()));
    }
    if terms == 0 {
        return Err(Error::InvalidArgument("terms must be >= 1".into()));
    }
    if !method.supports(strategy) {
        return Err(Error::InvalidStrategy { method, strategy });
    }
    let times = grid.times();
    let members: Vec<Vec<usize>> = match strategy {
        SamplingStrategy::PerTimeOptimal => (0..times.len()).map(|i| vec![i]).collect(),
        SamplingStrategy::SharedPerLogCycle => log_cycle_groups(grid),
        SamplingStrategy::SharedGlobal => vec![(0..times.len()).collect()],
    };
    let mut raw = Vec::new();
    let mut groups = Vec::with_capacity(members.len());
    for m in members {
        let t_min = times[m[0]];
        let t_max = times[*m.last().expect("nonempty group")];
        let gp = group_params(method, terms, t_min, t_max, params)?;
        let nodes = group_nodes(&gp, t_max);
        let start = raw.len();
        raw.extend(nodes);
        groups.push(PlanGroup { times: m, t_max, params: gp, indices: (start..raw.len()).collect() });
    }
    let (points, map) = dedup_points(&raw);
    for g in &mut groups {
        for idx in &mut g.indices {
            *idx = map[*idx];
        }
    }
    Ok(SamplePlan { method, strategy, terms, points, groups, requested: raw.len() })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grid::{make_time_grid, Spacing};

    fn log_grid() -> TimeGrid {
        make_time_grid(0.01, 10.0, 15, Spacing::Logarithmic).unwrap()
    }

    #[test]
    fn stehfest_per_time_budget() {
        let d = InversionMethodParams::default();
        let plan = plan_samples(Method::Stehfest, &log_grid(), 5, SamplingStrategy::PerTimeOptimal, &d).unwrap();
        assert_eq!(plan.requested, 75);
        let plan = plan_samples(Method::Stehfest, &log_grid(), 9, SamplingStrategy::PerTimeOptimal, &d).unwrap();
        assert_eq!(plan.requested, 135);
    }

    #[test]
    fn shared_global_budget() {
        let d = InversionMethodParams::default();
        for method in [Method::DeHoog, Method::Talbot, Method::Weeks, Method::Schapery] {
            let plan = plan_samples(method, &log_grid(), 51, SamplingStrategy::SharedGlobal, &d).unwrap();
            assert_eq!(plan.total_evaluations(), 51, "{method}");
            assert_eq!(plan.groups.len(), 1);
        }
    }

    #[test]
    fn stehfest_overlap_is_merged() {
        let grid = TimeGrid::from_times(vec![1.0, 2.0]).unwrap();
        let plan = plan_samples(
            Method::Stehfest,
            &grid,
            4,
            SamplingStrategy::PerTimeOptimal,
            &InversionMethodParams::default(),
        )
        .unwrap();
        assert_eq!(plan.requested, 8);
        // {1,2,3,4}·ln2 and {0.5,1,1.5,2}·ln2 share ln2 and 2 ln2.
        assert_eq!(plan.total_evaluations(), 6);
    }

    #[test]
    fn stehfest_rejects_sharing() {
        let d = InversionMethodParams::default();
        for s in [SamplingStrategy::SharedGlobal, SamplingStrategy::SharedPerLogCycle] {
            let err = plan_samples(Method::Stehfest, &log_grid(), 8, s, &d).unwrap_err();
            assert!(matches!(err, Error::InvalidStrategy { .. }));
        }
    }

    #[test]
    fn log_cycles() {
        let groups = log_cycle_groups(&make_time_grid(0.01, 10.0, 4, Spacing::Logarithmic).unwrap());
        assert_eq!(groups, vec![vec![0], vec![1], vec![2], vec![3]]);
        let groups = log_cycle_groups(&log_grid());
        assert_eq!(groups.len(), 4);
        assert_eq!(groups.iter().map(Vec::len).sum::<usize>(), 15);
    }

    #[test]
    fn single_time_strategies_agree() {
        let grid = TimeGrid::from_times(vec![0.7]).unwrap();
        let d = InversionMethodParams::default();
        for method in [Method::Schapery, Method::Weeks, Method::Talbot, Method::DeHoog] {
            let a = plan_samples(method, &grid, 12, SamplingStrategy::PerTimeOptimal, &d).unwrap();
            let b = plan_samples(method, &grid, 12, SamplingStrategy::SharedGlobal, &d).unwrap();
            assert_eq!(a.points, b.points, "{method}");
        }
    }

    #[test]
    fn dedup_keeps_first_order() {
        let p = |x: f64, y: f64| Complex64::new(x, y);
        let raw = [p(3.0, 0.0), p(1.0, 1.0), p(3.0 * (1.0 + 1e-14), 0.0), p(1.0, -1.0), p(1.0, 1.0)];
        let (points, map) = dedup_points(&raw);
        assert_eq!(points, vec![p(3.0, 0.0), p(1.0, 1.0), p(1.0, -1.0)]);
        assert_eq!(map, vec![0, 1, 0, 2, 1]);
    }

    #[test]
    fn method_names_round_trip() {
        for m in Method::ALL {
            assert_eq!(m.name().parse::<Method>().unwrap(), m);
        }
        assert!("piessens".parse::<Method>().is_err());
        assert!(!Method::Stehfest.capabilities().complex_p);
        assert!(Method::Weeks.capabilities().depends_on_t_max);
    }

    #[test]
    fn rejects_empty_budget() {
        let grid = TimeGrid::from_times(vec![1.0]).unwrap();
        let d = InversionMethodParams::default();
        assert!(plan_samples(Method::Talbot, &grid, 0, SamplingStrategy::SharedGlobal, &d).is_err());
    }
}
