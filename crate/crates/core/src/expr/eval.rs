use super::{parse, Expr, ExprKind};
use crate::error::{Error, Result};
use crate::interval::{Interval, Rounding};
use crate::riemann::IntervalFunction;

/// Evaluates `e` at `x` with round-to-nearest arithmetic.
pub fn eval(e: &Expr, x: Interval) -> Result<Interval> {
    eval_with(e, x, Rounding::Nearest)
}

pub fn eval_with(e: &Expr, x: Interval, rounding: Rounding) -> Result<Interval> {
    if !x.is_finite() {
        return Err(Error::InfiniteOperand);
    }
    node(e, x, rounding)
}

fn located(e: &Expr, err: Error) -> Error {
    match err {
        Error::Located { .. } => err,
        other => Error::Located {
            start: e.span.start,
            end: e.span.end,
            source: Box::new(other),
        },
    }
}

fn node(e: &Expr, x: Interval, r: Rounding) -> Result<Interval> {
    let v = match &e.kind {
        ExprKind::Var => Ok(x),
        ExprKind::IntervalLit(c) => Ok(*c),
        ExprKind::RealLit(c) => Ok(Interval::point(*c)),
        ExprKind::Midpoint(a) => node(a, x, r)?.midpoint().map(Interval::point),
        ExprKind::Exp(a) => node(a, x, r)?.exp_with(r),
        ExprKind::Neg(a) => Ok(node(a, x, r)?.neg()),
        ExprKind::Add(a, b) => node(a, x, r)?.add_with(node(b, x, r)?, r),
        ExprKind::Sub(a, b) => node(a, x, r)?.sub_with(node(b, x, r)?, r),
        ExprKind::Mul(a, b) => node(a, x, r)?.mul_with(node(b, x, r)?, r),
        ExprKind::Div(a, b) => node(a, x, r)?.div_with(node(b, x, r)?, r),
        ExprKind::Pow(a, n) => node(a, x, r)?.powi_with(*n, r),
    };
    v.map_err(|err| located(e, err))
}

/// An expression used as an [`IntervalFunction`].
#[derive(Debug, Clone, PartialEq)]
pub struct ExprFunction {
    pub expr: Expr,
    pub rounding: Rounding,
}

impl ExprFunction {
    pub fn new(expr: Expr, rounding: Rounding) -> Self {
        ExprFunction { expr, rounding }
    }

    pub fn parse(src: &str) -> Result<Self> {
        Ok(ExprFunction::new(parse(src)?, Rounding::Nearest))
    }
}

impl IntervalFunction for ExprFunction {
    fn eval(&self, x: Interval) -> Result<Interval> {
        eval_with(&self.expr, x, self.rounding)
    }
}
