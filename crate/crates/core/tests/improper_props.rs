mod common;

use common::{dist, leq_slack};
use moya_core::improper::upper_infinity_trace;
use moya_core::iprob::{exponential_density, gaussian_density};
use moya_core::{
    integrate_doubly_improper, integrate_from_lower_infinity, integrate_to_upper_infinity,
    IntegrationConfig, Interval, IntervalFunction, LimitConfig, LimitOrder,
};
use proptest::prelude::*;

fn point(x: f64) -> Interval {
    Interval::point(x)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    #[test]
    fn orders_of_limits_agree(lam in 0.5f64..3.0, width in 0.0f64..1.0) {
        let d = exponential_density(Interval::new(lam, lam + width).unwrap()).unwrap();
        let (icfg, lcfg) = (IntegrationConfig::default(), LimitConfig::default());
        let a = integrate_doubly_improper(&d, 0.0, LimitOrder::LowerOuter, &icfg, &lcfg).unwrap();
        let b = integrate_doubly_improper(&d, 0.0, LimitOrder::UpperOuter, &icfg, &lcfg).unwrap();
        prop_assert!(dist(a, b) <= 3.0 * lcfg.tol, "{a} vs {b}");
    }

    #[test]
    fn partial_integrals_increase(lam in 0.5f64..3.0, width in 0.0f64..1.0, start in 0.0f64..2.0) {
        let d = exponential_density(Interval::new(lam, lam + width).unwrap()).unwrap();
        let (icfg, lcfg) = (IntegrationConfig::default(), LimitConfig::default());
        let t = upper_infinity_trace(&d, point(start), start, &icfg, &lcfg).unwrap();
        for w in t.steps.windows(2) {
            prop_assert!(leq_slack(&w[0].1, &w[1].1), "{} then {}", w[0].1, w[1].1);
        }
    }
}

#[test]
fn gaussian_total_mass_by_both_orders() {
    let g = gaussian_density(point(1.0), point(2.0)).unwrap();
    let (icfg, lcfg) = (IntegrationConfig::default(), LimitConfig::default());
    let lcfg = LimitConfig { start: 2f64.sqrt(), ..lcfg };
    let a = integrate_doubly_improper(&g, 1.0, LimitOrder::LowerOuter, &icfg, &lcfg).unwrap();
    let b = integrate_doubly_improper(&g, 1.0, LimitOrder::UpperOuter, &icfg, &lcfg).unwrap();
    assert!(dist(a, Interval::ONE) <= 1e-6 && dist(a, b) <= 3.0 * lcfg.tol);
}

#[test]
fn one_sided_improper_integrals() {
    let (icfg, lcfg) = (IntegrationConfig::default(), LimitConfig::default());
    let e = exponential_density(point(2.0)).unwrap();
    let v = integrate_to_upper_infinity(&e, point(0.5), 0.5, &icfg, &lcfg).unwrap();
    assert!(dist(v, point((-1.0f64).exp())) <= 1e-6);
    // the mirrored density integrated from [-inf]
    let mirrored = |x: Interval| e.eval(x.neg());
    let v = integrate_from_lower_infinity(&mirrored, point(-0.5), -0.5, &icfg, &lcfg).unwrap();
    assert!(dist(v, point((-1.0f64).exp())) <= 1e-6);
    // a nondegenerate lower limit
    let v = integrate_to_upper_infinity(&e, Interval::new(0.0, 1.0).unwrap(), 1.0, &icfg, &lcfg).unwrap();
    assert!(v.is_finite() && v.lo() >= 0.0);
}
