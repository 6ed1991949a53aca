//! Interval probability densities, distribution functions and moments.

use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::improper::{
    integrate_doubly_improper, integrate_from_lower_infinity, integrate_to_upper_infinity,
    LimitConfig, LimitOrder,
};
use crate::interval::Interval;
use crate::partition::OrderBox;
use crate::riemann::{integrate, IntegrationConfig, IntervalFunction};

/// Parameters of the named distributions.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase", deny_unknown_fields)]
pub enum DistributionSpec {
    Uniform { a: Interval, b: Interval },
    Exponential { lambda: Interval },
    Gaussian { mean: Interval, variance: Interval },
}

impl DistributionSpec {
    pub fn build(&self) -> Result<Distribution> {
        match *self {
            DistributionSpec::Uniform { a, b } => uniform_density(a, b),
            DistributionSpec::Exponential { lambda } => exponential_density(lambda),
            DistributionSpec::Gaussian { mean, variance } => gaussian_density(mean, variance),
        }
    }

    pub fn from_json(src: &str) -> Result<Self> {
        serde_json::from_str(src)
            .map_err(|e| Error::InvalidParameter(format!("distribution JSON: {e}")))
    }

    /// True when every parameter interval is degenerate.
    pub fn is_degenerate(&self) -> bool {
        match self {
            DistributionSpec::Uniform { a, b } => a.is_degenerate() && b.is_degenerate(),
            DistributionSpec::Exponential { lambda } => lambda.is_degenerate(),
            DistributionSpec::Gaussian { mean, variance } => {
                mean.is_degenerate() && variance.is_degenerate()
            }
        }
    }
}

/// Where the density can be nonzero.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Support {
    /// `A << X << B`.
    Box(OrderBox),
    /// `L << X`.
    From(Interval),
    Real,
}

#[derive(Clone)]
enum Density {
    Uniform { domain: OrderBox, value: Interval },
    Exponential { lambda: Interval },
    Gaussian { mean: Interval, twice_var: Interval, factor: Interval },
    Custom(Arc<dyn IntervalFunction + Send + Sync>),
}

/// An interval random variable given by its density.
#[derive(Clone)]
pub struct Distribution {
    spec: Option<DistributionSpec>,
    density: Density,
    support: Support,
    /// Anchor for improper probes on an unbounded support.
    center: f64,
    /// Lower bound for the first improper probe offset.
    scale: f64,
}

impl fmt::Debug for Distribution {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Distribution")
            .field("spec", &self.spec)
            .field("support", &self.support)
            .field("center", &self.center)
            .field("scale", &self.scale)
            .finish()
    }
}

/// `f(X) = [1,1] / (B - A)` on `A << X << B`, `[0,0]` otherwise.
pub fn uniform_density(a: Interval, b: Interval) -> Result<Distribution> {
    let domain = OrderBox::new(a, b)?;
    if !(b.lo() > a.hi()) {
        return Err(Error::InvalidParameter(format!(
            "uniform needs b.lo > a.hi so that B - A excludes zero, got A = {a}, B = {b}"
        )));
    }
    let value = Interval::ONE.div(b.sub(a)?)?;
    Ok(Distribution {
        spec: Some(DistributionSpec::Uniform { a, b }),
        density: Density::Uniform { domain, value },
        support: Support::Box(domain),
        center: 0.5 * (a.lo() + b.hi()),
        scale: 1.0,
    })
}

/// `f(X) = λ e^{-λX}` on `[0,0] << X`, `[0,0]` otherwise.
pub fn exponential_density(lambda: Interval) -> Result<Distribution> {
    if !(lambda.is_finite() && Interval::ZERO.ll(&lambda)) {
        return Err(Error::InvalidParameter(format!(
            "exponential needs [0,0] << lambda, got {lambda}"
        )));
    }
    Ok(Distribution {
        spec: Some(DistributionSpec::Exponential { lambda }),
        density: Density::Exponential { lambda },
        support: Support::From(Interval::ZERO),
        center: 0.0,
        scale: 1.0,
    })
}

/// `f(X) = 1/sqrt(2π Var) · e^{-(X - μ)² / (2 Var)}` in interval arithmetic,
/// with `(X - μ)²` taken as the product `(X - μ)(X - μ)`.
pub fn gaussian_density(mean: Interval, variance: Interval) -> Result<Distribution> {
    if !(mean.is_finite() && variance.is_finite() && Interval::ZERO.ll(&variance)) {
        return Err(Error::InvalidParameter(format!(
            "gaussian needs a finite mean and Var >> [0,0], got mean {mean}, Var {variance}"
        )));
    }
    let twice_var = variance.scale(2.0)?;
    let factor = Interval::ONE.div(variance.scale(2.0 * std::f64::consts::PI)?.sqrt()?)?;
    Ok(Distribution {
        spec: Some(DistributionSpec::Gaussian { mean, variance }),
        density: Density::Gaussian {
            mean,
            twice_var,
            factor,
        },
        support: Support::Real,
        center: mean.midpoint()?,
        scale: variance.hi().sqrt().max(1.0),
    })
}

impl Distribution {
    /// A distribution with a user-supplied density. `center` and `scale`
    /// place the probes of improper integrals on an unbounded support.
    pub fn custom<F>(density: F, support: Support, center: f64, scale: f64) -> Result<Self>
    where
        F: IntervalFunction + Send + Sync + 'static,
    {
        if !(center.is_finite() && scale.is_finite() && scale > 0.0) {
            return Err(Error::InvalidParameter("custom center/scale must be finite, scale > 0".into()));
        }
        Ok(Distribution {
            spec: None,
            density: Density::Custom(Arc::new(density)),
            support,
            center,
            scale,
        })
    }

    pub fn spec(&self) -> Option<&DistributionSpec> {
        self.spec.as_ref()
    }

    pub fn support(&self) -> Support {
        self.support
    }

    pub fn density(&self, x: Interval) -> Result<Interval> {
        match &self.density {
            Density::Uniform { domain, value } => {
                if domain.a().ll(&x) && x.ll(&domain.b()) {
                    Ok(*value)
                } else {
                    Ok(Interval::ZERO)
                }
            }
            Density::Exponential { lambda } => {
                if Interval::ZERO.ll(&x) {
                    lambda.mul(lambda.mul(x)?.neg().exp()?)
                } else {
                    Ok(Interval::ZERO)
                }
            }
            Density::Gaussian {
                mean,
                twice_var,
                factor,
            } => {
                let d = x.sub(*mean)?;
                factor.mul(d.mul(d)?.div(*twice_var)?.neg().exp()?)
            }
            Density::Custom(f) => f.eval(x),
        }
    }

    fn limits(&self, cfg: &LimitConfig) -> LimitConfig {
        LimitConfig {
            start: cfg.start.max(self.scale),
            ..*cfg
        }
    }

    /// `∫ g(X)·f(X) dX` over the whole support.
    fn integrate_weighted<G>(&self, g: G, cfg: &ProbConfig) -> Result<Interval>
    where
        G: Fn(Interval) -> Result<Interval>,
    {
        let h = |x: Interval| -> Result<Interval> {
            let fx = self.density(x)?;
            if fx == Interval::ZERO {
                return Ok(fx);
            }
            g(x)?.mul(fx)
        };
        let lcfg = self.limits(&cfg.limits);
        match self.support {
            Support::Box(domain) => Ok(integrate(&h, domain, &cfg.integration)?.value),
            Support::From(l) => integrate_to_upper_infinity(&h, l, l.hi(), &cfg.integration, &lcfg),
            Support::Real => {
                integrate_doubly_improper(&h, self.center, cfg.order, &cfg.integration, &lcfg)
            }
        }
    }
}

impl IntervalFunction for Distribution {
    fn eval(&self, x: Interval) -> Result<Interval> {
        self.density(x)
    }
}

/// Integration and limit settings for probability queries.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct ProbConfig {
    pub integration: IntegrationConfig,
    pub limits: LimitConfig,
    pub order: LimitOrder,
}

/// `f_X(x)`.
pub fn pdf(d: &Distribution, x: Interval) -> Result<Interval> {
    d.density(x)
}

/// `F_X(x) = ∫_{[-∞]}^x f_X`, following each support's case split.
pub fn cdf(d: &Distribution, x: Interval, cfg: &ProbConfig) -> Result<Interval> {
    if !x.is_finite() {
        return Err(Error::InfiniteOperand);
    }
    match d.support {
        Support::Box(domain) => {
            let (a, b) = (domain.a(), domain.b());
            if a.ll(&x) && x.ll(&b) {
                Ok(integrate(d, OrderBox::new(a, x)?, &cfg.integration)?.value)
            } else if x.lo() <= a.lo() || x.hi() <= a.hi() {
                Ok(Interval::ZERO)
            } else if b.leq(&x) {
                Ok(Interval::ONE)
            } else {
                Err(Error::AmbiguousProbe(x))
            }
        }
        Support::From(l) => {
            if l.ll(&x) {
                Ok(integrate(d, OrderBox::new(l, x)?, &cfg.integration)?.value)
            } else {
                Ok(Interval::ZERO)
            }
        }
        Support::Real => {
            integrate_from_lower_infinity(d, x, d.center, &cfg.integration, &d.limits(&cfg.limits))
        }
    }
}

/// `P(A << X <= B) = ∫_A^B f_X`.
pub fn prob_between(d: &Distribution, a: Interval, b: Interval, cfg: &ProbConfig) -> Result<Interval> {
    Ok(integrate(d, OrderBox::new(a, b)?, &cfg.integration)?.value)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct BetweenReport {
    pub integral: Interval,
    pub cdf_difference: Interval,
    pub discrepancy: f64,
}

/// [`prob_between`] next to `F_X(B) - F_X(A)`.
pub fn prob_between_report(
    d: &Distribution,
    a: Interval,
    b: Interval,
    cfg: &ProbConfig,
) -> Result<BetweenReport> {
    let integral = prob_between(d, a, b, cfg)?;
    let cdf_difference = cdf(d, b, cfg)?.sub(cdf(d, a, cfg)?)?;
    Ok(BetweenReport {
        integral,
        cdf_difference,
        discrepancy: integral.metric(&cdf_difference)?,
    })
}

/// `P(X >> A) = [1,1] - F_X(A)`.
pub fn prob_gt(d: &Distribution, a: Interval, cfg: &ProbConfig) -> Result<Interval> {
    Interval::ONE.sub(cdf(d, a, cfg)?)
}

/// `P(X << B) = F_X(B⁻)`, which is `F_X(B)` for a continuous variable.
pub fn prob_lt(d: &Distribution, b: Interval, cfg: &ProbConfig) -> Result<Interval> {
    cdf(d, b, cfg)
}

/// `∫ Xⁿ f_X(X) dX` with `Xⁿ` a left-associated interval product.
pub fn nth_moment(d: &Distribution, n: u32, cfg: &ProbConfig) -> Result<Interval> {
    if n == 0 {
        return Err(Error::InvalidParameter("moment order must be at least 1".into()));
    }
    d.integrate_weighted(|x| x.powi(n), cfg)
}

pub fn mean(d: &Distribution, cfg: &ProbConfig) -> Result<Interval> {
    nth_moment(d, 1, cfg)
}

/// `∫ f_X` over the support.
pub fn total_mass(d: &Distribution, cfg: &ProbConfig) -> Result<Interval> {
    d.integrate_weighted(|_| Ok(Interval::ONE), cfg)
}

/// `∫ (X - μ)(X - μ) f_X(X) dX` with `μ` the interval mean.
pub fn variance(d: &Distribution, cfg: &ProbConfig) -> Result<Interval> {
    let mu = mean(d, cfg)?;
    let var = d.integrate_weighted(
        |x| {
            let c = x.sub(mu)?;
            c.mul(c)
        },
        cfg,
    )?;
    if var.lo() < -cfg.limits.tol {
        return Err(Error::NegativeVariance(var));
    }
    Ok(var)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct StdDev {
    pub value: Interval,
    pub variance: Interval,
    /// The variance's lower endpoint was slightly negative and was set to 0.
    pub clamped: bool,
}

/// Componentwise square root of the variance.
pub fn std_dev(d: &Distribution, cfg: &ProbConfig) -> Result<StdDev> {
    let var = variance(d, cfg)?;
    let clamped = var.lo() < 0.0;
    let base = if clamped {
        Interval::new(0.0, var.hi().max(0.0))?
    } else {
        var
    };
    Ok(StdDev {
        value: base.sqrt()?,
        variance: var,
        clamped,
    })
}

/// `[(λ̲/λ̄)(1 - e^{-λ̄x̄}), (λ̄x̄/(λ̲x̲))(1 - e^{-λ̲x̲})]` for `[0,0] << x`.
pub fn exponential_cdf_closed_form(lambda: Interval, x: Interval) -> Result<Interval> {
    if !(lambda.is_finite() && Interval::ZERO.ll(&lambda)) {
        return Err(Error::InvalidParameter(format!("exponential needs [0,0] << lambda, got {lambda}")));
    }
    if !(x.is_finite() && Interval::ZERO.ll(&x)) {
        return Err(Error::InvalidParameter(format!("closed form needs [0,0] << x, got {x}")));
    }
    let (ll, lh, xl, xh) = (lambda.lo(), lambda.hi(), x.lo(), x.hi());
    let lo = ll / lh * -(-lh * xh).exp_m1();
    let hi = lh * xh / (ll * xl) * -(-ll * xl).exp_m1();
    Interval::new(lo, hi)
}

/// `[(x̲ - a̲)/(b̄ - a̲), (x̲ - a̲)/(b̲ - ā)] · d_M(A, X)/(x̲ - a̲)` for `A << X << B`.
pub fn uniform_cdf_closed_form(a: Interval, b: Interval, x: Interval) -> Result<Interval> {
    OrderBox::new(a, b)?;
    if !(b.lo() > a.hi()) {
        return Err(Error::InvalidParameter("uniform needs b.lo > a.hi".into()));
    }
    if !(a.ll(&x) && x.ll(&b)) {
        return Err(Error::InvalidParameter(format!("closed form needs A << x << B, got {x}")));
    }
    let run = x.lo() - a.lo();
    let scale = a.metric(&x)? / run;
    Interval::new(run / (b.hi() - a.lo()), run / (b.lo() - a.hi()))?.scale(scale)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DensityReport {
    pub nonnegative: bool,
    /// Smallest lower endpoint seen on the probe grid.
    pub min_lower: f64,
    pub probes: usize,
    pub total: Interval,
    /// `d_M(total, [1,1])`.
    pub deviation: f64,
    pub normalized: bool,
}

/// Deviation from `[1,1]` below which a density counts as normalized.
pub const NORMALIZATION_TOL: f64 = 1e-3;

fn probe_grid(d: &Distribution) -> Result<Vec<Interval>> {
    let mut probes = Vec::new();
    let mut push_around = |x: f64, w: f64| -> Result<()> {
        probes.push(Interval::point(x));
        probes.push(Interval::new(x, x + w)?);
        Ok(())
    };
    match d.support {
        Support::Box(domain) => {
            let (lo, hi) = (domain.a().lo(), domain.b().lo());
            for k in 0..16 {
                let t = lo + (hi - lo) * (k as f64 + 0.5) / 16.0;
                let diag = domain.diagonal_at(t)?;
                probes.push(diag);
                probes.push(Interval::point(t));
            }
        }
        Support::From(l) => {
            for k in -4..12 {
                let x = l.hi() + d.scale * 2f64.powi(k);
                push_around(x, d.scale)?;
            }
        }
        Support::Real => {
            push_around(d.center, d.scale)?;
            for k in -4..8 {
                let off = d.scale * 2f64.powi(k);
                push_around(d.center + off, d.scale)?;
                push_around(d.center - off, d.scale)?;
            }
        }
    }
    Ok(probes)
}

/// Samples `f_X >= [0,0]` on a probe grid and compares the total mass
/// with `[1,1]`. Violations are reported, not raised.
pub fn check_density(d: &Distribution, cfg: &ProbConfig) -> Result<DensityReport> {
    let probes = probe_grid(d)?;
    let mut min_lower = f64::INFINITY;
    for p in &probes {
        min_lower = min_lower.min(d.density(*p)?.lo());
    }
    let total = total_mass(d, cfg)?;
    let deviation = total.metric(&Interval::ONE)?;
    Ok(DensityReport {
        nonnegative: min_lower >= 0.0,
        min_lower,
        probes: probes.len(),
        total,
        deviation,
        normalized: deviation <= NORMALIZATION_TOL,
    })
}
