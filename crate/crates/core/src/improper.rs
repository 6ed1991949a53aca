//! Limits towards infinite intervals and improper interval integrals.
//!
//! Limits are realized numerically: the limit variable walks along the
//! degenerate diagonal `[c, c]` with `|c|` growing geometrically, and the
//! walk stops once two consecutive steps move the value by less than `tol`
//! in the Moore metric.

use crate::error::{Error, Result};
use crate::interval::Interval;
use crate::partition::OrderBox;
use crate::riemann::{integrate, IntegrationConfig, IntervalFunction};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LimitConfig {
    /// Cauchy tolerance in `d_M`.
    pub tol: f64,
    /// Geometric step factor (> 1).
    pub growth: f64,
    pub max_steps: usize,
    /// Distance of the first probe from its anchor.
    pub start: f64,
}

impl Default for LimitConfig {
    fn default() -> Self {
        LimitConfig {
            tol: 1e-6,
            growth: 2.0,
            max_steps: 60,
            start: 1.0,
        }
    }
}

impl LimitConfig {
    pub fn validate(&self) -> Result<()> {
        if !(self.tol > 0.0) {
            return Err(Error::InvalidParameter("limit tolerance must be positive".into()));
        }
        if !(self.growth > 1.0) || !self.growth.is_finite() {
            return Err(Error::InvalidParameter("limit growth must exceed 1".into()));
        }
        if !(self.start > 0.0) || !self.start.is_finite() {
            return Err(Error::InvalidParameter("limit start must be positive".into()));
        }
        if self.max_steps < 3 {
            return Err(Error::InvalidParameter("limit needs at least 3 steps".into()));
        }
        Ok(())
    }

    /// Offsets `start * growth^k` for `k = 0..max_steps`.
    fn offsets(&self) -> impl Iterator<Item = f64> + '_ {
        (0..self.max_steps).map(move |k| self.start * self.growth.powi(k as i32))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Direction {
    /// Towards `[+inf]`.
    Up,
    /// Towards `[-inf]`.
    Down,
}

/// Sequence of probe values that led to a limit.
#[derive(Debug, Clone, PartialEq)]
pub struct LimitTrace {
    pub value: Interval,
    pub steps: Vec<(f64, Interval)>,
}

fn limit_along<G, I>(mut g: G, probes: I, cfg: &LimitConfig) -> Result<LimitTrace>
where
    G: FnMut(f64) -> Result<Interval>,
    I: IntoIterator<Item = f64>,
{
    cfg.validate()?;
    let mut steps: Vec<(f64, Interval)> = Vec::new();
    let mut passes = 0;
    for c in probes {
        let v = g(c)?;
        if let Some(&(_, prev)) = steps.last() {
            if prev.metric(&v)? < cfg.tol {
                passes += 1;
            } else {
                passes = 0;
            }
        }
        steps.push((c, v));
        if passes >= 2 {
            return Ok(LimitTrace { value: v, steps });
        }
    }
    let last = steps.last().map(|s| s.1).unwrap_or(Interval::ZERO);
    Err(Error::NonConvergent {
        last,
        steps: steps.len(),
    })
}

/// `lim g(X)` as `X` runs along `[c, c]`, `c = ±start·growth^k`.
pub fn limit_at_infinity<G>(mut g: G, direction: Direction, cfg: &LimitConfig) -> Result<Interval>
where
    G: FnMut(Interval) -> Result<Interval>,
{
    let sign = match direction {
        Direction::Up => 1.0,
        Direction::Down => -1.0,
    };
    limit_along(|c| g(Interval::point(c)), cfg.offsets().map(|o| sign * o), cfg).map(|t| t.value)
}

/// `∫_A^{[∞]^b} F(X) dX` with the trace of partial integrals
/// `∫_A^{[c,c]} F`, `c = max(b, a.hi) + start·growth^k`.
pub fn upper_infinity_trace<F: IntervalFunction + ?Sized>(
    f: &F,
    a: Interval,
    b_anchor: f64,
    icfg: &IntegrationConfig,
    lcfg: &LimitConfig,
) -> Result<LimitTrace> {
    let base = b_anchor.max(a.hi());
    limit_along(
        |c| Ok(integrate(f, OrderBox::new(a, Interval::point(c))?, icfg)?.value),
        lcfg.offsets().map(|o| base + o),
        lcfg,
    )
}

pub fn integrate_to_upper_infinity<F: IntervalFunction + ?Sized>(
    f: &F,
    a: Interval,
    b_anchor: f64,
    icfg: &IntegrationConfig,
    lcfg: &LimitConfig,
) -> Result<Interval> {
    upper_infinity_trace(f, a, b_anchor, icfg, lcfg).map(|t| t.value)
}

/// `∫_{[∞]_a}^B F(X) dX` through `∫_{[c,c]}^B F`, `c = min(a, b.lo) - start·growth^k`.
pub fn integrate_from_lower_infinity<F: IntervalFunction + ?Sized>(
    f: &F,
    b: Interval,
    a_anchor: f64,
    icfg: &IntegrationConfig,
    lcfg: &LimitConfig,
) -> Result<Interval> {
    let base = a_anchor.min(b.lo());
    limit_along(
        |c| Ok(integrate(f, OrderBox::new(Interval::point(c), b)?, icfg)?.value),
        lcfg.offsets().map(|o| base - o),
        lcfg,
    )
    .map(|t| t.value)
}

/// Which limit of `∫_{[-inf]}^{[+inf]}` is taken last.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum LimitOrder {
    /// `lim_{C→[-inf]} lim_{D→[+inf]} ∫_C^D`.
    #[default]
    LowerOuter,
    /// `lim_{D→[+inf]} lim_{C→[-inf]} ∫_C^D`.
    UpperOuter,
}

/// `∫_{[-inf]}^{[+inf]} F(X) dX` as an iterated limit over degenerate
/// probes `C = [center - s, center - s]`, `D = [center + s', center + s']`.
pub fn integrate_doubly_improper<F: IntervalFunction + ?Sized>(
    f: &F,
    center: f64,
    order: LimitOrder,
    icfg: &IntegrationConfig,
    lcfg: &LimitConfig,
) -> Result<Interval> {
    let partial = |c: f64, d: f64| -> Result<Interval> {
        let domain = OrderBox::new(Interval::point(c), Interval::point(d))?;
        Ok(integrate(f, domain, icfg)?.value)
    };
    let lower_probes = || lcfg.offsets().map(|o| center - o);
    let upper_probes = || lcfg.offsets().map(|o| center + o);
    let traced = match order {
        LimitOrder::LowerOuter => limit_along(
            |c| limit_along(|d| partial(c, d), upper_probes(), lcfg).map(|t| t.value),
            lower_probes(),
            lcfg,
        ),
        LimitOrder::UpperOuter => limit_along(
            |d| limit_along(|c| partial(c, d), lower_probes(), lcfg).map(|t| t.value),
            upper_probes(),
            lcfg,
        ),
    };
    traced.map(|t| t.value)
}
