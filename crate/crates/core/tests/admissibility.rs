use proptest::prelude::*;
use qes2_core::admissibility::{c0_objective, positive_intervals, sphere_profile};
use qes2_core::grid::{linspace, logspace};
use qes2_core::specfun::HypParam;
use qes2_core::{
    admissible_c_range, classify, compute_c0, find_roots, AdmissibleRange, BetaBranch, ModelParams, Profile,
};

const MS: [f64; 7] = [-3.0, -1.0, -0.5, 0.5, 1.0, 2.0, 3.0];
const LAMBDAS: [f64; 3] = [-1.0, 0.0, 1.0];

fn thresholds(m: f64, lambda: f64) -> Vec<f64> {
    let mut t = vec![0.0];
    if m != -1.0 {
        t.push(lambda / (m + 1.0));
    }
    if let AdmissibleRange::Open { lower, upper } = admissible_c_range(m, lambda).unwrap() {
        t.extend([lower, upper].into_iter().filter(|v| v.is_finite()));
    }
    t.sort_by(f64::total_cmp);
    t.dedup();
    t
}

/// A smooth pole pair around the axis, found by scanning B without consulting the classification.
fn observed_sphere(p: &Profile) -> bool {
    positive_intervals(p).unwrap().iter().any(|r| {
        let simple = r.db1.abs() > 1e-8 && r.db2.abs() > 1e-8;
        r.x1 < 0.0 && r.x2 > 0.0 && simple && r.smoothness_defect() <= 1e-9 * r.db1.abs()
    })
}

#[test]
fn sweep_classification_matches_observed_roots() {
    let mut checked = 0;
    for m in MS {
        for lambda in LAMBDAS {
            let ts = thresholds(m, lambda);
            for &t in &ts {
                let half = if t == 0.0 { 0.5 } else { 0.5 * t.abs() };
                for c in linspace(t - half, t + half, 40) {
                    if ts.iter().any(|&s| (c - s).abs() < 1e-6) {
                        continue;
                    }
                    let v = classify(m, lambda, c, 0.0).unwrap();
                    let p = sphere_profile(m, lambda, c).unwrap();
                    let seen = observed_sphere(&p);
                    assert_eq!(v.admissible, seen, "m={m} λ={lambda} c={c}: {v:?}");
                    if v.admissible {
                        let r = find_roots(&p).unwrap();
                        assert!((r.x1 + r.x2).abs() <= 1e-9 * (1.0 + r.x2.abs()));
                        assert!(r.smoothness_defect() <= 1e-9 * r.db1.abs());
                        assert!(r.db1 > 0.0 && r.db2 < 0.0);
                        let b = |x: f64| p.value(x).unwrap();
                        assert!(
                            b(r.x1).abs() <= 1e-10 * r.db1.abs().max(1.0)
                                && b(r.x2).abs() <= 1e-10 * r.db1.abs().max(1.0)
                        );
                    } else {
                        assert!(find_roots(&p).is_err(), "m={m} λ={lambda} c={c}");
                    }
                    checked += 1;
                }
            }
        }
    }
    assert!(checked > 700, "{checked}");
}

#[test]
fn c0_certificate_on_log_grid() {
    for m in [1.0, 2.0, 3.0, 4.0] {
        let r = compute_c0(m).unwrap();
        let hyp = HypParam::new(m).unwrap();
        let grid = logspace(r.x0 * (1.0 + 1e-9), 1e3, 100_000);
        let worst = grid.iter().map(|&x| c0_objective(&hyp, x)).fold(f64::INFINITY, f64::min);
        assert!(r.c0 <= worst * (1.0 + 1e-12), "m={m}: {} vs {worst}", r.c0);
        assert!(r.xmin > r.x0 && r.c0 > 0.0);
    }
}

#[test]
fn c0_m2_closed_form() {
    let r = compute_c0(2.0).unwrap();
    assert!((r.x0 - 1.0).abs() < 1e-8);
    assert!((r.xmin - 3f64.sqrt()).abs() < 1e-8);
    assert!((r.c0 - 8.0).abs() < 1e-8);
    assert!(compute_c0(-1.0).is_err());
}

#[test]
fn kerr_scaling_in_c() {
    let p = sphere_profile(2.0, 0.0, 5.0).unwrap();
    let r = find_roots(&p).unwrap();
    assert!((r.x2 - 1.0).abs() < 1e-13);
    assert!((r.period - 4.0 * std::f64::consts::PI / 5.0).abs() < 1e-12);
}

#[test]
fn closed_branch_is_rejected_by_root_finder() {
    let p = Profile::new(ModelParams { m: 2.0, lambda: 1.0, b: 0.0, c: 1.0, beta: BetaBranch::Closed }).unwrap();
    assert!(find_roots(&p).is_err());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn threshold_monotone_for_negative_lambda(m in 0.3..4.0f64, lambda in -3.0..-0.2f64, eps in 1e-3..0.3f64) {
        let lower = match admissible_c_range(m, lambda).unwrap() {
            AdmissibleRange::Open { lower, .. } => lower,
            AdmissibleRange::Empty => unreachable!(),
        };
        let below = sphere_profile(m, lambda, lower * (1.0 - eps)).unwrap();
        let above = sphere_profile(m, lambda, lower * (1.0 + eps)).unwrap();
        prop_assert!(find_roots(&below).is_err());
        prop_assert!(find_roots(&above).is_ok());
    }

    #[test]
    fn admissible_draws_have_symmetric_simple_roots(m in prop_oneof![-4.0..-1.2f64, -0.9..-0.1f64, Just(-1.0), 0.1..4.0f64], lambda in 0.1..3.0f64, t in 0.05..0.95f64) {
        let c = match admissible_c_range(m, lambda).unwrap() {
            AdmissibleRange::Open { lower, upper } if upper.is_finite() => lower + t * (upper - lower),
            AdmissibleRange::Open { lower, .. } => lower + t * 4.0 + 1e-3,
            AdmissibleRange::Empty => unreachable!(),
        };
        prop_assume!(classify(m, lambda, c, 0.0).unwrap().admissible);
        let r = find_roots(&sphere_profile(m, lambda, c).unwrap()).unwrap();
        prop_assert!((r.x1 + r.x2).abs() <= 1e-9 * (1.0 + r.x2.abs()));
        prop_assert!(r.smoothness_defect() <= 1e-9 * r.db1.abs());
        prop_assert!((r.period * r.db1.abs() - 4.0 * std::f64::consts::PI).abs() < 1e-9);
    }
}
