use proptest::prelude::*;
use qes2_core::{BetaBranch, ModelParams, Profile};

fn profile(m: f64, lambda: f64, b: f64, c: f64) -> Profile {
    Profile::new(ModelParams { m, lambda, b, c, beta: BetaBranch::NonClosed }).unwrap()
}

fn m_strategy() -> impl Strategy<Value = f64> {
    prop_oneof![-5.0..-1.1f64, -0.9..-0.1f64, 0.1..5.0f64, Just(-1.0), Just(2.0)]
}

#[test]
fn kerr_reduction() {
    for lambda in [-2.0, 0.0, 0.7] {
        let p = profile(2.0, lambda, 0.0, 1.3);
        for i in 0..1000 {
            let x = -10.0 + 20.0 * i as f64 / 999.0;
            let q = 1.0 + x * x;
            let want = 1.3 * (1.0 - x * x) / q - lambda * q / 3.0;
            let got = p.value(x).unwrap();
            assert!((got - want).abs() <= 1e-12 * want.abs().max(1.0), "x={x}");
        }
    }
}

#[test]
fn near_axis_is_finite() {
    let p = profile(2.0, 0.0, 0.0, 1.0);
    let e = p.eval(1e-6).unwrap();
    assert!((e.b - 1.0).abs() < 1e-11);
    assert!(e.b1.is_finite() && e.b2.is_finite());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn even_when_b_vanishes(m in m_strategy(), lambda in -2.0..2.0f64, c in -3.0..3.0f64, x in 0.0..8.0f64) {
        let p = profile(m, lambda, 0.0, c);
        prop_assert_eq!(p.value(x).unwrap(), p.value(-x).unwrap());
    }

    #[test]
    fn b_term_is_odd(m in m_strategy(), lambda in -2.0..2.0f64, c in -3.0..3.0f64, b in -2.0..2.0f64, x in 0.0..8.0f64) {
        let with = profile(m, lambda, b, c);
        let without = profile(m, lambda, 0.0, c);
        let d_plus = with.value(x).unwrap() - without.value(x).unwrap();
        let d_minus = with.value(-x).unwrap() - without.value(-x).unwrap();
        let scale = 1.0 + with.value(x).unwrap().abs() + without.value(x).unwrap().abs();
        prop_assert!((d_plus + d_minus).abs() <= 1e-12 * scale);
    }

    #[test]
    fn ode_closure(m in m_strategy(), lambda in -2.0..2.0f64, c in -3.0..3.0f64, b in -1.0..1.0f64, x in -5.0..5.0f64) {
        let p = profile(m, lambda, b, c);
        let r = p.ode_residual(x).unwrap();
        prop_assert!(r.relative() <= 1e-8, "{:?}", r);
    }

    #[test]
    fn closed_branch_ode(m in prop_oneof![0.2..3.0f64, Just(1.0), Just(-1.0), -3.0..-0.2f64], lambda in -2.0..2.0f64, c in -3.0..3.0f64, b in -1.0..1.0f64, x in 0.3..5.0f64) {
        let p = Profile::new(ModelParams { m, lambda, b, c, beta: BetaBranch::Closed }).unwrap();
        prop_assert!(p.ode_residual(x).unwrap().relative() <= 1e-8);
    }

    #[test]
    fn slope_matches_differences(m in m_strategy(), lambda in -2.0..2.0f64, c in -3.0..3.0f64, b in -1.0..1.0f64, x in -5.0..5.0f64) {
        let p = profile(m, lambda, b, c);
        let h = 1e-3 * x.abs().max(1.0);
        let v = |t: f64| p.value(t).unwrap();
        let fd = (-v(x + 2.0 * h) + 8.0 * v(x + h) - 8.0 * v(x - h) + v(x - 2.0 * h)) / (12.0 * h);
        let b1 = p.eval(x).unwrap().b1;
        prop_assert!((b1 - fd).abs() <= 1e-8 * (1.0 + b1.abs()));
    }

    #[test]
    fn axis_value_is_alpha(m in m_strategy(), lambda in -2.0..2.0f64, c in -3.0..3.0f64) {
        let p = profile(m, lambda, 0.0, c);
        let b0 = p.value(0.0).unwrap();
        prop_assert!((b0 - p.alpha().0).abs() <= 1e-14 * (1.0 + b0.abs()));
    }
}
