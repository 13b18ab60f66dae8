//! Randomized invariants of the planner, the inverters, the Bessel kernel
//! and the boundary-element model.

use lapinv::algorithms::{
    dehoog_invert, schapery_eval, schapery_fit, stehfest_invert, talbot_invert, weeks_coefficients, weeks_eval,
};
use lapinv::bem::{assemble, discretize_rectangle, BemImage, Kernel, SideConditions};
use lapinv::plan::{dedup_points, GroupParams, DEDUP_TOLERANCE};
use lapinv::specfun::bessel_k01;
use lapinv::{
    evaluate_image, invert_all, plan_samples, Complex64, FnImage, InversionMethodParams, Method, SamplePlan, SampleSet,
    SamplingStrategy, TimeGrid,
};
use proptest::prelude::*;

fn config() -> ProptestConfig {
    ProptestConfig { cases: 128, ..ProptestConfig::default() }
}

/// Smooth images with real inverses and singularities left of `Re p = 0`.
fn image(kind: usize, p: Complex64) -> Complex64 {
    match kind % 4 {
        0 => 1.0 / (p + 1.0),
        1 => 1.0 / ((p + 0.5) * (p + 0.5)),
        2 => 1.0 / ((p + 0.25) * (p + 0.25) + 1.0),
        _ => (p + 2.0).inv() * (p + 3.0).inv(),
    }
}

fn times() -> impl Strategy<Value = Vec<f64>> {
    prop::collection::btree_set(1u32..3000, 1..6).prop_map(|s| s.into_iter().map(|k| k as f64 / 100.0).collect())
}

fn method() -> impl Strategy<Value = Method> {
    prop::sample::select(Method::ALL.to_vec())
}

fn strategy_for(method: Method, shared: SamplingStrategy) -> SamplingStrategy {
    if method.supports(shared) {
        shared
    } else {
        SamplingStrategy::PerTimeOptimal
    }
}

fn plan(method: Method, grid: &TimeGrid, terms: usize, shared: SamplingStrategy) -> SamplePlan {
    plan_samples(method, grid, terms, strategy_for(method, shared), &InversionMethodParams::default()).unwrap()
}

fn values_of(plan: &SamplePlan, f: impl Fn(Complex64) -> Complex64) -> Vec<Complex64> {
    plan.points.iter().map(|&p| f(p)).collect()
}

fn invert(plan: &SamplePlan, grid: &TimeGrid, values: Vec<Complex64>) -> Vec<f64> {
    let samples = SampleSet::from_values(plan.clone(), values).unwrap();
    invert_all(plan.method, &samples, grid, &InversionMethodParams::default()).unwrap().values
}

fn terms_for(method: Method, terms: usize) -> usize {
    if method == Method::Stehfest {
        2 * (terms / 2).clamp(2, 8)
    } else {
        terms
    }
}

fn shared() -> impl Strategy<Value = SamplingStrategy> {
    prop::sample::select(vec![
        SamplingStrategy::PerTimeOptimal,
        SamplingStrategy::SharedPerLogCycle,
        SamplingStrategy::SharedGlobal,
    ])
}

/// Inverts one time from raw, non-deduplicated samples of `f`.
fn direct(params: &GroupParams, t: f64, f: &dyn Fn(Complex64) -> Complex64) -> f64 {
    let real = |v: Vec<f64>| v.into_iter().map(|x| f(Complex64::new(x, 0.0))).collect::<Vec<_>>();
    match params {
        GroupParams::Stehfest(s) => stehfest_invert(&real(s.nodes(t)), t, s).unwrap(),
        GroupParams::Schapery(s) => {
            let fit = schapery_fit(&real(s.nodes.clone()), s).unwrap();
            schapery_eval(&fit.coefficients, &s.nodes, s.steady, t).unwrap()
        }
        GroupParams::Weeks(w) => {
            let nodes = lapinv::algorithms::weeks_nodes(w);
            let a = weeks_coefficients(&nodes.iter().map(|&p| f(p)).collect::<Vec<_>>(), w).unwrap();
            weeks_eval(&a, w, t).unwrap().value
        }
        GroupParams::Talbot(tp) => {
            let nodes = lapinv::algorithms::talbot_contour(tp.r, tp.n);
            talbot_invert(&nodes.iter().map(|&p| f(p)).collect::<Vec<_>>(), t, tp).unwrap().value
        }
        GroupParams::DeHoog(d) => {
            let nodes = d.nodes();
            dehoog_invert(&nodes.iter().map(|&p| f(p)).collect::<Vec<_>>(), t, d).unwrap().value
        }
    }
}

/// Rounding tolerance, amplified by Stehfest's alternating weights or
/// Schapery's node conditioning.
fn amplification(plan: &SamplePlan) -> f64 {
    match &plan.groups[0].params {
        GroupParams::Stehfest(s) => {
            let w = lapinv::algorithms::stehfest_weights(s.effective_n()).unwrap();
            1e-14 * w.iter().map(|v| v.abs()).sum::<f64>()
        }
        GroupParams::Schapery(s) => {
            let ones = vec![Complex64::new(1.0, 0.0); s.nodes.len()];
            1e-14 * schapery_fit(&ones, s).unwrap().condition.sqrt().max(1e5)
        }
        _ => 1e-9,
    }
}

fn same(a: Complex64, b: Complex64) -> bool {
    let near = |x: f64, y: f64| (x - y).abs() <= DEDUP_TOLERANCE * x.abs().max(y.abs());
    near(a.re, b.re) && near(a.im, b.im)
}

fn close(a: f64, b: f64, tol: f64) -> bool {
    (a - b).abs() <= tol * (1.0 + a.abs().max(b.abs()))
}

proptest! {
    #![proptest_config(config())]

    #[test]
    fn inversion_is_linear(
        m in method(),
        ts in times(),
        terms in 8usize..24,
        s in shared(),
        (f, g) in (0usize..4, 0usize..4),
        (a, b) in (-5.0f64..5.0, -5.0f64..5.0),
    ) {
        prop_assume!(m != Method::DeHoog);
        let grid = TimeGrid::from_times(ts).unwrap();
        let plan = plan(m, &grid, terms_for(m, terms), s);
        let vf = values_of(&plan, |p| image(f, p));
        let vg = values_of(&plan, |p| image(g, p));
        let mix: Vec<_> = vf.iter().zip(&vg).map(|(x, y)| a * x + b * y).collect();
        let (rf, rg, rm) = (invert(&plan, &grid, vf), invert(&plan, &grid, vg), invert(&plan, &grid, mix));
        for i in 0..grid.len() {
            let expect = a * rf[i] + b * rg[i];
            let scale = a.abs() * rf[i].abs() + b.abs() * rg[i].abs();
            prop_assert!((rm[i] - expect).abs() <= amplification(&plan) * (1.0 + scale), "{m}: {} vs {expect}", rm[i]);
        }
    }

    /// The continued fraction is homogeneous but not additive. Scaling by a
    /// power of two is exact; other scales and sums agree to the accuracy
    /// of the method, since the QD table amplifies rounding.
    #[test]
    fn dehoog_is_homogeneous_and_nearly_additive(
        ts in prop::collection::btree_set(100u32..1000, 1..6)
            .prop_map(|s| s.into_iter().map(|k| k as f64 / 100.0).collect::<Vec<_>>()),
        terms in 31usize..52,
        (f, g) in (0usize..4, 0usize..4),
        (a, b) in (0.1f64..5.0, 0.1f64..5.0),
        k in -20i32..20,
    ) {
        let grid = TimeGrid::from_times(ts).unwrap();
        let plan = plan(Method::DeHoog, &grid, terms, SamplingStrategy::SharedGlobal);
        let vf = values_of(&plan, |p| image(f, p));
        let vg = values_of(&plan, |p| image(g, p));
        let scaled: Vec<_> = vf.iter().map(|x| a * x).collect();
        let c = 2f64.powi(k);
        let binary: Vec<_> = vf.iter().map(|x| c * x).collect();
        let mix: Vec<_> = vf.iter().zip(&vg).map(|(x, y)| a * x + b * y).collect();
        let (rf, rg) = (invert(&plan, &grid, vf), invert(&plan, &grid, vg));
        let (rs, rm, rb) = (invert(&plan, &grid, scaled), invert(&plan, &grid, mix), invert(&plan, &grid, binary));
        for i in 0..grid.len() {
            prop_assert_eq!(rb[i], c * rf[i]);
            prop_assert!(close(rs[i], a * rf[i], 1e-4), "{} vs {}", rs[i], a * rf[i]);
            prop_assert!(close(rm[i], a * rf[i] + b * rg[i], 1e-4));
        }
    }

    #[test]
    fn dedup_matches_raw_sampling(
        m in method(),
        ts in times(),
        terms in 8usize..24,
        s in shared(),
        f in 0usize..4,
    ) {
        let grid = TimeGrid::from_times(ts).unwrap();
        let plan = plan(m, &grid, terms_for(m, terms), s);
        let planned = invert(&plan, &grid, values_of(&plan, |p| image(f, p)));
        for group in &plan.groups {
            for &i in &group.times {
                let t = grid.times()[i];
                let raw = direct(&group.params, t, &|p| image(f, p));
                prop_assert!(close(planned[i], raw, amplification(&plan)), "{m} t={t}: {} vs {raw}", planned[i]);
            }
        }
    }

    #[test]
    fn plan_invariants(m in method(), ts in times(), terms in 3usize..30, s in shared()) {
        let grid = TimeGrid::from_times(ts).unwrap();
        let plan = plan(m, &grid, terms_for(m, terms), s);
        prop_assert_eq!(plan.total_evaluations(), plan.points.len());
        prop_assert!(plan.total_evaluations() <= plan.requested);
        for i in 0..grid.len() {
            let g = plan.group_of(i).expect("every time is planned");
            prop_assert!(!g.indices.is_empty());
            prop_assert!(g.indices.iter().all(|&k| k < plan.len()));
        }
    }

    #[test]
    fn dedup_is_sound(
        base in prop::collection::vec((-50.0f64..50.0, -50.0f64..50.0), 1..20),
        picks in prop::collection::vec((0usize..20, any::<bool>()), 0..40),
    ) {
        let mut raw: Vec<Complex64> = base.iter().map(|&(a, b)| Complex64::new(a, b)).collect();
        for &(k, nudge) in &picks {
            let p = raw[k % base.len()];
            raw.push(if nudge { p * (1.0 + 1e-14) } else { p });
        }
        let (points, map) = dedup_points(&raw);
        prop_assert_eq!(map.len(), raw.len());
        let mut seen = 0;
        for (r, &k) in raw.iter().zip(&map) {
            let d = (r - points[k]).norm();
            prop_assert!(d <= 4.0 * DEDUP_TOLERANCE * r.norm().max(1e-300));
            prop_assert!(k <= seen);
            if k == seen {
                seen += 1;
            }
        }
        prop_assert_eq!(seen, points.len());
        for i in 0..points.len() {
            for j in i + 1..points.len() {
                prop_assert!(!same(points[i], points[j]), "{} and {} both kept", points[i], points[j]);
            }
        }
    }

    #[test]
    fn evaluation_order_does_not_matter(m in method(), ts in times(), terms in 8usize..24, f in 0usize..4, seed in any::<u64>()) {
        let grid = TimeGrid::from_times(ts).unwrap();
        let plan = plan(m, &grid, terms_for(m, terms), SamplingStrategy::SharedGlobal);
        let parallel = evaluate_image(&plan, &FnImage::new(move |p| image(f, p))).unwrap();
        // sequential evaluation in a shuffled order
        let mut order: Vec<usize> = (0..plan.len()).collect();
        let mut state = seed | 1;
        for i in (1..order.len()).rev() {
            state ^= state << 13;
            state ^= state >> 7;
            state ^= state << 17;
            order.swap(i, (state % (i as u64 + 1)) as usize);
        }
        let mut values = vec![Complex64::new(0.0, 0.0); plan.len()];
        for &k in &order {
            values[k] = image(f, plan.points[k]);
        }
        let a = invert_all(m, &parallel, &grid, &InversionMethodParams::default()).unwrap();
        let b = invert(&plan, &grid, values);
        prop_assert_eq!(
            a.values.iter().map(|v| v.to_bits()).collect::<Vec<_>>(),
            b.iter().map(|v| v.to_bits()).collect::<Vec<_>>()
        );
    }

    #[test]
    fn bessel_schwarz_reflection(r in 1e-6f64..600.0, theta in -std::f64::consts::FRAC_PI_2..std::f64::consts::FRAC_PI_2) {
        let z = Complex64::from_polar(r, theta);
        let (k, kc) = (bessel_k01(z).unwrap(), bessel_k01(z.conj()).unwrap());
        prop_assert_eq!(kc.k0, k.k0.conj());
        prop_assert_eq!(kc.k1, k.k1.conj());
    }
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 100, ..ProptestConfig::default() })]

    #[test]
    fn bem_schwarz_reflection(re in 0.05f64..20.0, im in -20.0f64..20.0, x in 0.2f64..2.8, y in 0.2f64..1.8) {
        let mesh = discretize_rectangle(3.0, 2.0, 1, &SideConditions::benchmark()).unwrap();
        let p = Complex64::new(re, im);
        let k = Kernel::for_laplace_parameter(p, 1.0);
        let (s, sc) = (assemble(&mesh, k).unwrap(), assemble(&mesh, k.conj()).unwrap());
        for (a, b) in s.h.iter().zip(sc.h.iter()).chain(s.g.iter().zip(sc.g.iter())) {
            prop_assert!((a.conj() - b).norm() <= 1e-13 * (1.0 + a.norm()));
        }
        let model = BemImage::new(mesh, 1.0, [x, y], |p: Complex64| p.inv()).unwrap();
        let (v, vc) = (model.solve(p).unwrap(), model.solve(p.conj()).unwrap());
        prop_assert!((v.potential.conj() - vc.potential).norm() <= 1e-10 * (1.0 + v.potential.norm()));
        prop_assert!((v.gradient[0].conj() - vc.gradient[0]).norm() <= 1e-10 * (1.0 + v.gradient[0].norm()));
    }
}
