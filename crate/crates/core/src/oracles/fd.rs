//! Crank–Nicolson reference for the one-dimensional benchmark.

use super::benchmark::LENGTH;
use super::pairs::TimeBehavior;
use crate::error::{Error, Result};
use crate::grid::TimeGrid;

/// Potential and x-flux `−∂φ/∂x` sampled at the grid times.
#[derive(Debug, Clone, PartialEq)]
pub struct ReferenceSeries {
    pub times: Vec<f64>,
    pub potential: Vec<f64>,
    pub flux: Vec<f64>,
}

/// Backward-Euler half steps taken after each discontinuity of the data.
const DAMPING_STEPS: usize = 2;

struct Stepper {
    h: f64,
    u: Vec<f64>,
    // scratch for the Thomas solve
    c: Vec<f64>,
    d: Vec<f64>,
}

impl Stepper {
    /// One θ-step of length `dt`. `left`/`right` are the Dirichlet values at
    /// the start and end of the step.
    fn step(&mut self, dt: f64, theta: f64, left: (f64, f64), right: (f64, f64)) {
        let n = self.u.len();
        let r = dt / (self.h * self.h);
        let (a_impl, a_expl) = (theta * r, (1.0 - theta) * r);
        let diag = 1.0 + 2.0 * a_impl;
        let off = -a_impl;
        // Explicit part plus boundary contributions.
        for i in 0..n {
            let um = if i == 0 { left.0 } else { self.u[i - 1] };
            let up = if i + 1 == n { right.0 } else { self.u[i + 1] };
            let mut rhs = self.u[i] + a_expl * (um - 2.0 * self.u[i] + up);
            if i == 0 {
                rhs += a_impl * left.1;
            }
            if i + 1 == n {
                rhs += a_impl * right.1;
            }
            self.d[i] = rhs;
        }
        // Thomas algorithm for the constant tridiagonal (off, diag, off).
        self.c[0] = off / diag;
        self.d[0] /= diag;
        for i in 1..n {
            let m = diag - off * self.c[i - 1];
            self.c[i] = off / m;
            self.d[i] = (self.d[i] - off * self.d[i - 1]) / m;
        }
        self.u[n - 1] = self.d[n - 1];
        for i in (0..n - 1).rev() {
            self.u[i] = self.d[i] - self.c[i] * self.u[i + 1];
        }
    }

    fn node(&self, i: usize, left: f64, right: f64) -> f64 {
        let n = self.u.len();
        if i == 0 {
            left
        } else if i == n + 1 {
            right
        } else {
            self.u[i - 1]
        }
    }

    /// Linear interpolation of the potential and of the centred slope.
    fn sample(&self, x: f64, left: f64, right: f64) -> (f64, f64) {
        let nodes = self.u.len() + 1;
        let s = (x / self.h).clamp(0.0, nodes as f64);
        let i = (s.floor() as usize).min(nodes - 1);
        let w = s - i as f64;
        let phi = (1.0 - w) * self.node(i, left, right) + w * self.node(i + 1, left, right);
        let slope = |k: usize| {
            if k == 0 {
                (self.node(1, left, right) - self.node(0, left, right)) / self.h
            } else if k == nodes {
                (self.node(nodes, left, right) - self.node(nodes - 1, left, right)) / self.h
            } else {
                (self.node(k + 1, left, right) - self.node(k - 1, left, right)) / (2.0 * self.h)
            }
        };
        let grad = (1.0 - w) * slope(i) + w * slope(i + 1);
        (phi, -grad)
    }
}

/// Marches `φ_t = φ_xx` on `[0, 3]` with `nx` intervals and nominal step
/// `dt`, landing exactly on every output time and every jump of the data.
pub fn crank_nicolson_1d(
    x_obs: f64,
    times: &TimeGrid,
    behavior: TimeBehavior,
    nx: usize,
    dt: f64,
) -> Result<ReferenceSeries> {
    if nx < 16 {
        return Err(Error::InvalidArgument(format!("nx must be >= 16, got {nx}")));
    }
    if !(dt.is_finite() && dt > 0.0) {
        return Err(Error::InvalidArgument(format!("dt must be > 0, got {dt}")));
    }
    if !(0.0..=LENGTH).contains(&x_obs) {
        return Err(Error::InvalidArgument(format!("x = {x_obs} is outside [0, {LENGTH}]")));
    }
    if dt > times.t_min() {
        return Err(Error::InvalidArgument(format!("dt = {dt} exceeds the first output time {}", times.t_min())));
    }
    let mut stepper =
        Stepper { h: LENGTH / nx as f64, u: vec![0.0; nx - 1], c: vec![0.0; nx - 1], d: vec![0.0; nx - 1] };
    let boundary = |f: f64| (-2.0 * f, 2.0 * f);
    let mut jumps: Vec<f64> = behavior.discontinuities();
    let mut t = 0.0;
    let mut damping = 0;
    let mut out = ReferenceSeries { times: times.times().to_vec(), potential: Vec::new(), flux: Vec::new() };
    for &target in times.times() {
        while t < target {
            if let Some(pos) = jumps.iter().position(|&j| j <= t) {
                jumps.remove(pos);
                damping = DAMPING_STEPS;
            }
            let next_jump = jumps.iter().copied().filter(|&j| j > t).fold(f64::INFINITY, f64::min);
            let (step, theta) = if damping > 0 { (0.5 * dt, 1.0) } else { (dt, 0.5) };
            let mut end = (t + step).min(target).min(next_jump);
            if target - end < 1e-9 * dt {
                end = target;
            }
            let (l0, r0) = boundary(behavior.right_limit(t));
            let (l1, r1) = boundary(behavior.left_limit(end));
            stepper.step(end - t, theta, (l0, l1), (r0, r1));
            damping = damping.saturating_sub(1);
            t = end;
        }
        let (l, r) = boundary(behavior.left_limit(t));
        let (phi, flux) = stepper.sample(x_obs, l, r);
        out.potential.push(phi);
        out.flux.push(flux);
    }
    Ok(out)
}
