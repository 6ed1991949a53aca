//! Interval-valued Riemann integration over Kulisch–Miranker order boxes,
//! improper interval integrals and interval probability distributions.
//!
//! The integral of an interval function `F` over the box `I_[A,B]` is
//! computed from its left and right spectra along the box diagonal:
//!
//! ```
//! use moya_core::{integrate, Interval, IntegrationConfig, OrderBox};
//!
//! let domain = OrderBox::new(Interval::new(0.0, 1.0)?, Interval::new(2.0, 3.0)?)?;
//! let identity = |x: Interval| Ok(x);
//! let r = integrate(&identity, domain, &IntegrationConfig::default())?;
//! assert!(r.value.metric(&Interval::new(2.0, 4.0)?)? < 1e-9);
//! # Ok::<(), moya_core::Error>(())
//! ```

pub mod error;
pub mod expr;
pub mod improper;
pub mod interval;
pub mod iprob;
pub mod partition;
pub mod quadrature;
pub mod riemann;

pub use error::{Error, Result};
pub use improper::{
    integrate_doubly_improper, integrate_from_lower_infinity, integrate_to_upper_infinity,
    limit_at_infinity, Direction, LimitConfig, LimitOrder,
};
pub use interval::{bounds_of_set, Interval, IntervalSetBounds, Rounding};
pub use partition::{BoxPartition, OrderBox, RealPartition};
pub use quadrature::QuadratureConfig;
pub use riemann::{
    integrate, lower_integral, lower_sum, upper_integral, upper_sum, IntegralResult,
    IntegrationConfig, IntervalFunction, Monotone, RangeEstimator,
};
