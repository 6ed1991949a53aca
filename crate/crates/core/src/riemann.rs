//! Lower and upper Riemann sums over box partitions, the lower and upper
//! integrals they converge to, and the spectrum-based closed form
//!
//! ```text
//! ∫_A^B F(X) dX = [∫ F_l, ∫ F_r] · d_M(A, B) / (b.lo - a.lo)
//! ```
//!
//! where `F_l`, `F_r` are the endpoints of `F` along the diagonal of the box.
//! The spectrum route is the default; the Riemann route is kept as an
//! independent check.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::interval::{bounds_of_set, Interval, IntervalSetBounds, Rounding};
use crate::partition::{BoxPartition, OrderBox};
use crate::quadrature::{integrate_components, QuadratureConfig};

/// An interval-valued function of one interval variable.
pub trait IntervalFunction {
    fn eval(&self, x: Interval) -> Result<Interval>;

    /// Exact infimum and supremum of the function over a sub-box, when the
    /// implementor knows them. Sums fall back to a [`RangeEstimator`]
    /// otherwise.
    fn range_over_box(&self, _cell: &OrderBox) -> Option<Result<IntervalSetBounds>> {
        None
    }
}

impl<F> IntervalFunction for F
where
    F: Fn(Interval) -> Result<Interval>,
{
    fn eval(&self, x: Interval) -> Result<Interval> {
        self(x)
    }
}

/// Marks a function as monotone in the Kulisch–Miranker order, so its exact
/// range over `I_[P,Q]` is `[F(P), F(Q)]`.
#[derive(Debug, Clone, Copy)]
pub struct Monotone<F>(pub F);

impl<F: IntervalFunction> IntervalFunction for Monotone<F> {
    fn eval(&self, x: Interval) -> Result<Interval> {
        self.0.eval(x)
    }

    fn range_over_box(&self, cell: &OrderBox) -> Option<Result<IntervalSetBounds>> {
        Some((|| {
            Ok(IntervalSetBounds {
                inf: self.0.eval(cell.a())?,
                sup: self.0.eval(cell.b())?,
            })
        })())
    }
}

/// Estimates the inf/sup of a function over a sub-box by sampling.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RangeEstimator {
    /// The four corners of `I_[P,Q]` plus a `k x k` grid of interior
    /// intervals; corners that are not intervals are skipped.
    Grid { k: usize },
}

impl Default for RangeEstimator {
    fn default() -> Self {
        RangeEstimator::Grid { k: 3 }
    }
}

impl RangeEstimator {
    pub fn estimate<F: IntervalFunction + ?Sized>(
        &self,
        f: &F,
        cell: &OrderBox,
    ) -> Result<IntervalSetBounds> {
        let RangeEstimator::Grid { k } = *self;
        let (p, q) = (cell.a(), cell.b());
        let lows = grid(p.lo(), q.lo(), k);
        let highs = grid(p.hi(), q.hi(), k);
        let mut values = Vec::with_capacity((k + 2) * (k + 2));
        for &lo in &lows {
            for &hi in &highs {
                if lo <= hi {
                    values.push(f.eval(Interval::new(lo, hi)?)?);
                }
            }
        }
        bounds_of_set(values)
    }
}

fn grid(a: f64, b: f64, k: usize) -> Vec<f64> {
    let mut pts = Vec::with_capacity(k + 2);
    pts.push(a);
    for i in 1..=k {
        pts.push(a + (b - a) * (i as f64 / (k + 1) as f64));
    }
    pts.push(b);
    pts
}

fn cell_bounds<F: IntervalFunction + ?Sized>(
    f: &F,
    cell: &OrderBox,
    estimator: &RangeEstimator,
) -> Result<IntervalSetBounds> {
    match f.range_over_box(cell) {
        Some(exact) => exact,
        None => estimator.estimate(f, cell),
    }
}

/// Lower and upper sums in one traversal of the diagonal chain of `p`.
pub fn riemann_sums<F: IntervalFunction + ?Sized>(
    f: &F,
    p: &BoxPartition,
    estimator: &RangeEstimator,
    rounding: Rounding,
) -> Result<(Interval, Interval)> {
    let chain = p.chain()?;
    let mut lower = Interval::ZERO;
    let mut upper = Interval::ZERO;
    for pair in chain.windows(2) {
        let cell = OrderBox::new(pair[0], pair[1])?;
        let weight = pair[0].metric(&pair[1])?;
        let bounds = cell_bounds(f, &cell, estimator)?;
        lower = lower.add_with(bounds.inf.scale_with(weight, rounding)?, rounding)?;
        upper = upper.add_with(bounds.sup.scale_with(weight, rounding)?, rounding)?;
    }
    Ok((lower, upper))
}

/// `σ(F, P) = Σ_k ⊓F(I_[P_k, P_k+1]) · d_M(P_k, P_k+1)`.
pub fn lower_sum<F: IntervalFunction + ?Sized>(
    f: &F,
    p: &BoxPartition,
    estimator: &RangeEstimator,
) -> Result<Interval> {
    riemann_sums(f, p, estimator, Rounding::Nearest).map(|(lo, _)| lo)
}

/// `Σ(F, P)`, the supremum counterpart of [`lower_sum`].
pub fn upper_sum<F: IntervalFunction + ?Sized>(
    f: &F,
    p: &BoxPartition,
    estimator: &RangeEstimator,
) -> Result<Interval> {
    riemann_sums(f, p, estimator, Rounding::Nearest).map(|(_, hi)| hi)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct IntegrationConfig {
    pub quadrature: QuadratureConfig,
    /// Cauchy tolerance (in `d_M`) for successive Riemann sums.
    pub riemann_tol: f64,
    /// Largest uniform partition tried by the Riemann route.
    pub n_max: usize,
    /// Also run the Riemann route in [`integrate`].
    pub with_oracle: bool,
    pub rounding: Rounding,
    pub estimator: RangeEstimator,
}

impl Default for IntegrationConfig {
    fn default() -> Self {
        IntegrationConfig {
            quadrature: QuadratureConfig::default(),
            riemann_tol: 1e-6,
            n_max: 1 << 16,
            with_oracle: false,
            rounding: Rounding::Nearest,
            estimator: RangeEstimator::default(),
        }
    }
}

/// Result of the n-doubling sequence of uniform-partition sums.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RiemannLimit {
    pub lower: Interval,
    pub upper: Interval,
    pub n: usize,
    pub lower_converged: bool,
    pub upper_converged: bool,
}

/// Runs `n = 1, 2, 4, ...` until both sums move by less than
/// `cfg.riemann_tol` or the next `n` would exceed `cfg.n_max`.
pub fn riemann_limits<F: IntervalFunction + ?Sized>(
    f: &F,
    domain: OrderBox,
    cfg: &IntegrationConfig,
) -> Result<RiemannLimit> {
    let mut n = 1;
    let (mut lower, mut upper) =
        riemann_sums(f, &BoxPartition::uniform(domain, n)?, &cfg.estimator, cfg.rounding)?;
    let (mut lower_done, mut upper_done) = (false, false);
    while !(lower_done && upper_done) && n * 2 <= cfg.n_max {
        n *= 2;
        let p = BoxPartition::uniform(domain, n)?;
        let (lo, hi) = riemann_sums(f, &p, &cfg.estimator, cfg.rounding)?;
        lower_done = lower.metric(&lo)? < cfg.riemann_tol;
        upper_done = upper.metric(&hi)? < cfg.riemann_tol;
        lower = lo;
        upper = hi;
    }
    Ok(RiemannLimit {
        lower,
        upper,
        n,
        lower_converged: lower_done,
        upper_converged: upper_done,
    })
}

/// Lower integral `⊔_n σ(F, P_n)` over uniform partitions.
pub fn lower_integral<F: IntervalFunction + ?Sized>(
    f: &F,
    domain: OrderBox,
    cfg: &IntegrationConfig,
) -> Result<Interval> {
    let lim = riemann_limits(f, domain, cfg)?;
    if lim.lower_converged {
        Ok(lim.lower)
    } else {
        Err(Error::NonConvergent {
            last: lim.lower,
            steps: lim.n,
        })
    }
}

/// Upper integral `⊓_n Σ(F, P_n)` over uniform partitions.
pub fn upper_integral<F: IntervalFunction + ?Sized>(
    f: &F,
    domain: OrderBox,
    cfg: &IntegrationConfig,
) -> Result<Interval> {
    let lim = riemann_limits(f, domain, cfg)?;
    if lim.upper_converged {
        Ok(lim.upper)
    } else {
        Err(Error::NonConvergent {
            last: lim.upper,
            steps: lim.n,
        })
    }
}

fn check_spectrum_arg(domain: &OrderBox, x: f64) -> Result<()> {
    let (lo, hi) = (domain.a().lo(), domain.b().lo());
    if lo <= x && x <= hi {
        Ok(())
    } else {
        Err(Error::OutOfDomain { x, lo, hi })
    }
}

/// `F_l(x) = π₁ F[x, a.hi + (b.hi - a.hi)/(b.lo - a.lo) (x - a.lo)]`.
pub fn spectrum_left<F: IntervalFunction + ?Sized>(f: &F, domain: &OrderBox, x: f64) -> Result<f64> {
    check_spectrum_arg(domain, x)?;
    Ok(f.eval(domain.diagonal_at(x)?)?.lo())
}

/// `F_r(x)`, the right projection along the diagonal.
pub fn spectrum_right<F: IntervalFunction + ?Sized>(f: &F, domain: &OrderBox, x: f64) -> Result<f64> {
    check_spectrum_arg(domain, x)?;
    Ok(f.eval(domain.diagonal_at(x)?)?.hi())
}

/// Spectra below this inversion are treated as rounding noise.
pub const SPECTRUM_ORDER_TOL: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct IntegralResult {
    pub value: Interval,
    #[serde(rename = "lower")]
    pub lower_estimate: Interval,
    #[serde(rename = "upper")]
    pub upper_estimate: Interval,
    /// Final uniform partition size of the Riemann check, 0 when it did not run.
    #[serde(rename = "n")]
    pub n_used: usize,
    pub converged: bool,
}

fn ordered_spectra(left: f64, right: f64) -> Result<(f64, f64)> {
    if left <= right {
        Ok((left, right))
    } else if left - right <= SPECTRUM_ORDER_TOL * (1.0 + left.abs()) {
        Ok((right, left))
    } else {
        Err(Error::SpectrumNotOrdered { left, right })
    }
}

/// Integral over the spectra, without the Riemann check.
pub fn spectrum_integral<F: IntervalFunction + ?Sized>(
    f: &F,
    domain: OrderBox,
    cfg: &IntegrationConfig,
) -> Result<Interval> {
    let [left, right] = integrate_components(
        |x| {
            let v = f.eval(domain.diagonal_at(x)?)?;
            Ok([v.lo(), v.hi()])
        },
        domain.a().lo(),
        domain.b().lo(),
        &cfg.quadrature,
    )?;
    let (left, right) = ordered_spectra(left, right)?;
    let scale = domain.size() / domain.lower_width();
    Interval::new(left, right)?.scale_with(scale, cfg.rounding)
}

/// Interval integral of a continuous `f` over `I_[A,B]`.
pub fn integrate<F: IntervalFunction + ?Sized>(
    f: &F,
    domain: OrderBox,
    cfg: &IntegrationConfig,
) -> Result<IntegralResult> {
    let value = spectrum_integral(f, domain, cfg)?;
    if !cfg.with_oracle {
        return Ok(IntegralResult {
            value,
            lower_estimate: value,
            upper_estimate: value,
            n_used: 0,
            converged: true,
        });
    }
    let lim = riemann_limits(f, domain, cfg)?;
    Ok(IntegralResult {
        value,
        lower_estimate: lim.lower,
        upper_estimate: lim.upper,
        n_used: lim.n,
        converged: lim.lower_converged && lim.upper_converged,
    })
}

/// Classical Moore–Yang integral over `[a, b]`: the degenerate box
/// `([a,a], [b,b])`, whose scale factor is exactly 1.
pub fn classical_moore_yang<F: IntervalFunction + ?Sized>(
    f: &F,
    a: f64,
    b: f64,
    cfg: &IntegrationConfig,
) -> Result<Interval> {
    let domain = OrderBox::new(Interval::point(a), Interval::point(b))?;
    Ok(integrate(f, domain, cfg)?.value)
}

/// `G(Y) = ∫_A^Y F(X) dX`, defined for `A << Y`.
pub fn indefinite<F: IntervalFunction + ?Sized>(
    f: &F,
    a: Interval,
    y: Interval,
    cfg: &IntegrationConfig,
) -> Result<Interval> {
    let domain = OrderBox::new(a, y)?;
    Ok(integrate(f, domain, cfg)?.value)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn iv(lo: f64, hi: f64) -> Interval {
        Interval::new(lo, hi).unwrap()
    }

    fn bx(a: (f64, f64), b: (f64, f64)) -> OrderBox {
        OrderBox::new(iv(a.0, a.1), iv(b.0, b.1)).unwrap()
    }

    fn identity(x: Interval) -> Result<Interval> {
        Ok(x)
    }

    fn close(a: Interval, b: Interval, tol: f64) -> bool {
        a.metric(&b).unwrap() <= tol
    }

    #[test]
    fn constant_sums_telescope() {
        let c = iv(2.0, 3.0);
        let f = |_x: Interval| Ok(c);
        let d = bx((0.0, 1.0), (2.0, 4.0));
        for n in [1, 2, 5, 8] {
            let p = BoxPartition::uniform(d, n).unwrap();
            let est = RangeEstimator::default();
            assert!(close(lower_sum(&f, &p, &est).unwrap(), iv(6.0, 9.0), 1e-12));
            assert!(close(upper_sum(&f, &p, &est).unwrap(), iv(6.0, 9.0), 1e-12));
        }
    }

    #[test]
    fn identity_sums_on_unit_classical_box() {
        let d = bx((0.0, 0.0), (1.0, 1.0));
        let f = Monotone(identity);
        let est = RangeEstimator::default();
        let p1 = BoxPartition::uniform(d, 1).unwrap();
        assert_eq!(lower_sum(&f, &p1, &est).unwrap(), iv(0.0, 0.0));
        assert_eq!(upper_sum(&f, &p1, &est).unwrap(), iv(1.0, 1.0));
        let p2 = BoxPartition::uniform(d, 2).unwrap();
        assert_eq!(lower_sum(&f, &p2, &est).unwrap(), iv(0.25, 0.25));
        assert_eq!(upper_sum(&f, &p2, &est).unwrap(), iv(0.75, 0.75));
        // the grid estimator sees both cell corners, so it agrees here
        assert_eq!(lower_sum(&identity, &p2, &est).unwrap(), iv(0.25, 0.25));
    }

    #[test]
    fn lower_and_upper_integrals_of_identity() {
        let cfg = IntegrationConfig {
            riemann_tol: 1e-4,
            ..Default::default()
        };
        let f = Monotone(identity);
        let d = bx((0.0, 0.0), (1.0, 1.0));
        let lo = lower_integral(&f, d, &cfg).unwrap();
        let hi = upper_integral(&f, d, &cfg).unwrap();
        assert!(close(lo, iv(0.5, 0.5), 3e-4), "{lo}");
        assert!(close(hi, iv(0.5, 0.5), 3e-4), "{hi}");
        assert!(lo.leq(&hi));

        let d = bx((0.0, 1.0), (2.0, 3.0));
        let lo = lower_integral(&f, d, &cfg).unwrap();
        let hi = upper_integral(&f, d, &cfg).unwrap();
        assert!(close(lo, iv(2.0, 4.0), 1e-3) && close(hi, iv(2.0, 4.0), 1e-3));
    }

    #[test]
    fn riemann_limits_report_non_convergence() {
        let cfg = IntegrationConfig {
            riemann_tol: 1e-9,
            n_max: 8,
            ..Default::default()
        };
        let d = bx((0.0, 0.0), (1.0, 1.0));
        match lower_integral(&Monotone(identity), d, &cfg) {
            Err(Error::NonConvergent { steps, .. }) => assert_eq!(steps, 8),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn spectra() {
        let d = bx((0.0, 1.0), (2.0, 3.0));
        assert_eq!(spectrum_left(&identity, &d, 0.5).unwrap(), 0.5);
        assert_eq!(spectrum_right(&identity, &d, 0.5).unwrap(), 1.5);
        let moore = |x: Interval| {
            let m = Interval::point(x.midpoint()?);
            m.add(x.sub(m)?.scale(0.5)?)
        };
        assert_eq!(spectrum_left(&moore, &d, 1.0).unwrap(), 1.25);
        assert_eq!(spectrum_right(&moore, &d, 1.0).unwrap(), 1.75);
        assert!(matches!(
            spectrum_left(&identity, &d, 2.5),
            Err(Error::OutOfDomain { .. })
        ));
        let classical = bx((-1.0, -1.0), (3.0, 3.0));
        let sq = |x: Interval| x.mul(x);
        assert_eq!(spectrum_left(&sq, &classical, 2.0).unwrap(), 4.0);
    }

    #[test]
    fn integrate_examples() {
        let cfg = IntegrationConfig::default();
        let v = integrate(&identity, bx((0.0, 1.0), (2.0, 3.0)), &cfg).unwrap().value;
        assert!(close(v, iv(2.0, 4.0), 1e-9), "{v}");

        let moore = |x: Interval| {
            let m = Interval::point(x.midpoint()?);
            m.add(x.sub(m)?.scale(0.5)?)
        };
        let v = integrate(&moore, bx((0.0, 1.0), (2.0, 3.0)), &cfg).unwrap().value;
        assert!(close(v, iv(2.5, 3.5), 1e-9), "{v}");

        let one = |_x: Interval| Ok(Interval::ONE);
        let v = integrate(&one, bx((0.0, 1.0), (2.0, 4.0)), &cfg).unwrap().value;
        assert!(close(v, iv(3.0, 3.0), 1e-12), "{v}");
    }

    #[test]
    fn integrate_with_oracle_fills_estimates() {
        let cfg = IntegrationConfig {
            with_oracle: true,
            riemann_tol: 1e-5,
            n_max: 1 << 18,
            ..Default::default()
        };
        let r = integrate(&Monotone(identity), bx((0.0, 1.0), (2.0, 3.0)), &cfg).unwrap();
        assert!(r.converged);
        assert!(r.lower_estimate.leq(&r.value) && r.value.leq(&r.upper_estimate));
        assert!(r.n_used > 1);
    }

    #[test]
    fn spectrum_order_check() {
        assert_eq!(ordered_spectra(1.0, 2.0).unwrap(), (1.0, 2.0));
        let tiny = 1.0 + 1e-12;
        assert_eq!(ordered_spectra(tiny, 1.0).unwrap(), (1.0, tiny));
        assert_eq!(
            ordered_spectra(2.0, 1.0),
            Err(Error::SpectrumNotOrdered { left: 2.0, right: 1.0 })
        );
    }

    #[test]
    fn classical_cases() {
        let cfg = IntegrationConfig::default();
        let v = classical_moore_yang(&identity, 0.0, 1.0, &cfg).unwrap();
        assert!(close(v, iv(0.5, 0.5), 1e-10));
        let c = |_x: Interval| Ok(iv(-1.0, 1.0));
        let v = classical_moore_yang(&c, -1.0, 2.0, &cfg).unwrap();
        assert!(close(v, iv(-3.0, 3.0), 1e-10));
        let sq = |x: Interval| x.mul(x);
        let v = classical_moore_yang(&sq, 0.0, 1.0, &cfg).unwrap();
        assert!(close(v, iv(1.0 / 3.0, 1.0 / 3.0), 1e-10));
        assert!(classical_moore_yang(&sq, 1.0, 1.0, &cfg).is_err());
    }

    #[test]
    fn indefinite_integral() {
        let cfg = IntegrationConfig::default();
        let g = indefinite(&identity, iv(0.0, 1.0), iv(2.0, 3.0), &cfg).unwrap();
        assert!(close(g, iv(2.0, 4.0), 1e-9));
        let one = |_x: Interval| Ok(Interval::ONE);
        let g = indefinite(&one, Interval::ZERO, Interval::point(0.7), &cfg).unwrap();
        assert!(close(g, iv(0.7, 0.7), 1e-12));
        assert!(indefinite(&one, iv(0.0, 1.0), iv(0.0, 2.0), &cfg).is_err());
        // shrinking towards A along the diagonal
        let a = iv(0.0, 1.0);
        let mut prev = f64::INFINITY;
        for h in [0.1, 0.01, 0.001] {
            let y = iv(h, 1.0 + h);
            let d = indefinite(&identity, a, y, &cfg).unwrap().metric(&Interval::ZERO).unwrap();
            assert!(d < prev);
            prev = d;
        }
        assert!(prev < 2e-3);
    }
}
