#![allow(dead_code)]

use moya_core::{Interval, IntervalFunction, Monotone, OrderBox, Result};

pub fn iv(lo: f64, hi: f64) -> Interval {
    Interval::new(lo, hi).unwrap()
}

pub fn bx(a: (f64, f64), b: (f64, f64)) -> OrderBox {
    OrderBox::new(iv(a.0, a.1), iv(b.0, b.1)).unwrap()
}

/// Kulisch–Miranker `<=` up to a relative rounding slack.
pub fn leq_slack(a: &Interval, b: &Interval) -> bool {
    let ok = |x: f64, y: f64| x <= y + 1e-12 * (1.0 + x.abs().max(y.abs()));
    ok(a.lo(), b.lo()) && ok(a.hi(), b.hi())
}

pub fn dist(a: Interval, b: Interval) -> f64 {
    a.metric(&b).unwrap()
}

pub type CatalogFn = fn(Interval) -> Result<Interval>;

pub fn constant(_x: Interval) -> Result<Interval> {
    Ok(iv(1.0, 2.0))
}

pub fn identity(x: Interval) -> Result<Interval> {
    Ok(x)
}

pub fn shifted(x: Interval) -> Result<Interval> {
    x.add(iv(1.0, 2.0))
}

pub fn scaled(x: Interval) -> Result<Interval> {
    iv(0.0, 2.0).mul(x)
}

pub fn moore(x: Interval) -> Result<Interval> {
    let m = Interval::point(x.midpoint()?);
    m.add(x.sub(m)?.scale(0.5)?)
}

pub fn square(x: Interval) -> Result<Interval> {
    x.mul(x)
}

/// The six catalog functions; `positive_only` marks `X·X`.
pub fn catalog() -> Vec<(&'static str, CatalogFn, bool)> {
    vec![
        ("[1,2]", constant as CatalogFn, false),
        ("X", identity, false),
        ("X+[1,2]", shifted, false),
        ("[0,2]*X", scaled, false),
        ("m(X)+0.5*(X-m(X))", moore, false),
        ("X*X", square, true),
    ]
}

pub fn catalog_boxes() -> Vec<OrderBox> {
    vec![
        bx((0.0, 1.0), (2.0, 3.0)),
        bx((0.0, 1.0), (2.0, 4.0)),
        bx((-1.0, 0.0), (1.0, 2.0)),
    ]
}

pub fn is_positive(b: &OrderBox) -> bool {
    b.a().lo() >= 0.0
}

/// Catalog entries as KM-monotone functions with exact cell ranges.
pub fn monotone(f: CatalogFn) -> Monotone<CatalogFn> {
    Monotone(f)
}

pub fn eval<F: IntervalFunction>(f: &F, x: Interval) -> Interval {
    f.eval(x).unwrap()
}
