use std::num::NonZeroUsize;

use gauss_quad::legendre::GaussLegendre;
use lapinv::harness::strategy_for;
use lapinv::oracles::{benchmark_laplace_1d, benchmark_time_series_1d, pair_catalog, TimeBehavior};
use lapinv::{
    evaluate_image, invert_all, make_time_grid, plan_samples, Complex64, FnImage, InversionMethodParams, Method,
    Spacing,
};

/// `∫₀^∞ e^{−pt} f(t) dt` by composite Gauss-Legendre, split at `breaks`.
fn forward(f: fn(f64) -> f64, p: Complex64, breaks: &[f64]) -> Complex64 {
    let rule = GaussLegendre::new(NonZeroUsize::new(16).unwrap());
    let end = 45.0 / p.re;
    let mut edges: Vec<f64> = breaks.iter().copied().filter(|&b| b > 0.0 && b < end).collect();
    edges.insert(0, 0.0);
    edges.push(end);
    let mut total = Complex64::new(0.0, 0.0);
    for w in edges.windows(2) {
        let panels = ((w[1] - w[0]) / 0.02).ceil().max(1.0) as usize;
        let h = (w[1] - w[0]) / panels as f64;
        for k in 0..panels {
            let a = w[0] + k as f64 * h;
            let re = rule.integrate(a, a + h, |t| ((-p * t).exp() * f(t)).re);
            let im = rule.integrate(a, a + h, |t| ((-p * t).exp() * f(t)).im);
            total += Complex64::new(re, im);
        }
    }
    total
}

#[test]
fn catalog_pairs_match_forward_transform() {
    let points = [Complex64::new(1.0, 0.0), Complex64::new(2.0, 1.0), Complex64::new(10.0, 0.0)];
    for pair in pair_catalog() {
        let breaks: Vec<f64> = pair.delay.into_iter().collect();
        for &p in &points {
            let numeric = forward(pair.time, p, &breaks);
            let exact = (pair.image)(p);
            let rel = (numeric - exact).norm() / exact.norm();
            assert!(rel < 1e-6, "{} at p = {p}: {numeric} vs {exact}", pair.name);
        }
    }
}

#[test]
fn behaviours_form_transform_pairs() {
    type Pair = (TimeBehavior, fn(f64) -> f64);
    let fs: [Pair; 3] = [
        (TimeBehavior::Heaviside, |t| TimeBehavior::Heaviside.value(t)),
        (TimeBehavior::Cosine4t, |t| TimeBehavior::Cosine4t.value(t)),
        (TimeBehavior::DelayedStep(0.08), |t| TimeBehavior::DelayedStep(0.08).value(t)),
    ];
    for (b, f) in fs {
        for p in [Complex64::new(1.0, 0.0), Complex64::new(2.0, 1.0), Complex64::new(10.0, 0.0)] {
            let numeric = forward(f, p, &b.discontinuities());
            assert!((numeric - b.image(p)).norm() < 1e-6 * b.image(p).norm(), "{b} at {p}");
        }
    }
}

/// Exact Laplace-space values isolate inversion error from the BEM.
#[test]
fn inverters_reproduce_series_from_exact_images() {
    let x = 1.0 / 3.0;
    let grid = make_time_grid(1.0, 10.0, 8, Spacing::Logarithmic).unwrap();
    let image = FnImage::new(move |p| benchmark_laplace_1d(x, p, TimeBehavior::Heaviside).unwrap());
    for (method, terms, tol) in [
        (Method::Stehfest, 14, 1e-3),
        // Schapery's fixed nodes and Weeks' slow coefficient decay for a pole at
        // the origin limit these two
        (Method::Schapery, 20, 5e-3),
        (Method::Weeks, 51, 5e-3),
        (Method::Talbot, 32, 1e-3),
        (Method::DeHoog, 41, 1e-3),
    ] {
        let params = InversionMethodParams { steady_state: -14.0 / 9.0, ..Default::default() };
        let plan = plan_samples(method, &grid, terms, strategy_for(method), &params).unwrap();
        let samples = evaluate_image(&plan, &image).unwrap();
        let result = invert_all(method, &samples, &grid, &params).unwrap();
        for (&t, v) in grid.times().iter().zip(&result.values) {
            let exact = benchmark_time_series_1d(x, t, TimeBehavior::Heaviside, 400).unwrap().potential;
            assert!((v - exact).abs() < tol * exact.abs(), "{method} t={t}: {v} vs {exact}");
        }
    }
}
