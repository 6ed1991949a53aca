use moya_core::expr::{eval, parse, Expr, ExprKind};
use moya_core::Interval;
use proptest::prelude::*;

fn literal() -> impl Strategy<Value = f64> {
    prop_oneof![
        (0u32..100).prop_map(f64::from),
        (0.0f64..1e3),
        (1e-8f64..1e-3),
    ]
}

fn leaf() -> impl Strategy<Value = Expr> {
    prop_oneof![
        Just(Expr::var()),
        literal().prop_map(Expr::real),
        (-50.0f64..50.0, 0.0f64..10.0).prop_map(|(lo, w)| Expr::interval(Interval::new(lo, lo + w).unwrap())),
    ]
}

fn expr() -> impl Strategy<Value = Expr> {
    leaf().prop_recursive(5, 48, 2, |inner| {
        prop_oneof![
            inner.clone().prop_map(Expr::neg),
            inner.clone().prop_map(Expr::midpoint),
            inner.clone().prop_map(Expr::exp),
            (inner.clone(), 1u32..5).prop_map(|(b, n)| Expr::pow(b, n)),
            (inner.clone(), inner.clone()).prop_map(|(l, r)| Expr::add(l, r)),
            (inner.clone(), inner.clone()).prop_map(|(l, r)| Expr::sub(l, r)),
            (inner.clone(), inner.clone()).prop_map(|(l, r)| Expr::mul(l, r)),
            (inner.clone(), inner).prop_map(|(l, r)| Expr::div(l, r)),
        ]
    })
}

/// Interval-free expressions without `m`, `exp` or `/`, so that real
/// evaluation stays well-conditioned.
fn real_expr() -> impl Strategy<Value = Expr> {
    let leaf = prop_oneof![Just(Expr::var()), (0u32..5).prop_map(|k| Expr::real(f64::from(k) * 0.5))];
    leaf.prop_recursive(4, 24, 2, |inner| {
        prop_oneof![
            inner.clone().prop_map(Expr::neg),
            (inner.clone(), 1u32..4).prop_map(|(b, n)| Expr::pow(b, n)),
            (inner.clone(), inner.clone()).prop_map(|(l, r)| Expr::add(l, r)),
            (inner.clone(), inner.clone()).prop_map(|(l, r)| Expr::sub(l, r)),
            (inner.clone(), inner).prop_map(|(l, r)| Expr::mul(l, r)),
        ]
    })
}

fn real_eval(e: &Expr, x: f64) -> f64 {
    match &e.kind {
        ExprKind::Var => x,
        ExprKind::RealLit(r) => *r,
        ExprKind::Neg(a) => -real_eval(a, x),
        ExprKind::Pow(a, n) => real_eval(a, x).powi(*n as i32),
        ExprKind::Add(a, b) => real_eval(a, x) + real_eval(b, x),
        ExprKind::Sub(a, b) => real_eval(a, x) - real_eval(b, x),
        ExprKind::Mul(a, b) => real_eval(a, x) * real_eval(b, x),
        other => unreachable!("{other:?}"),
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn print_then_parse_round_trips(e in expr()) {
        let printed = e.to_string();
        let back = parse(&printed).unwrap();
        prop_assert_eq!(&back, &e, "{}", printed);
        prop_assert_eq!(back.to_string(), printed);
    }

    #[test]
    fn degenerate_inputs_follow_real_arithmetic(e in real_expr(), x in -2.0f64..2.0) {
        prop_assert!(e.is_interval_free());
        let got = eval(&e, Interval::point(x)).unwrap();
        let want = real_eval(&e, x);
        let tol = 1e-12 * (1.0 + want.abs());
        prop_assert!((got.lo() - want).abs() <= tol && (got.hi() - want).abs() <= tol, "{e}: {got} vs {want}");
    }

    #[test]
    fn parser_never_panics(s in "[-+*/^()\\[\\],.0-9eXmxp ]{0,24}") {
        let _ = parse(&s);
    }
}
