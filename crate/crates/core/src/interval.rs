//! Closed real intervals with the Kulisch–Miranker order, the Moore metric
//! and endpoint arithmetic.
//!
//! Endpoints may be infinite so that `[+inf]`, `[-inf]`, `[x,+inf]` and
//! `[-inf,x]` can be used as integration limits, but every arithmetic
//! operation and the metric reject infinite operands.

use std::fmt;
use std::str::FromStr;

use serde::de::{self, SeqAccess, Visitor};
use serde::ser::SerializeTuple;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// Rounding applied to the endpoints produced by interval arithmetic.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Rounding {
    /// Plain IEEE round-to-nearest.
    #[default]
    Nearest,
    /// Widen every computed endpoint by one ulp outward.
    Outward,
}

impl Rounding {
    fn apply(self, lo: f64, hi: f64) -> Interval {
        match self {
            Rounding::Nearest => Interval { lo, hi },
            Rounding::Outward => Interval {
                lo: lo.next_down(),
                hi: hi.next_up(),
            },
        }
    }
}

impl FromStr for Rounding {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "nearest" => Ok(Rounding::Nearest),
            "outward" => Ok(Rounding::Outward),
            other => Err(Error::InvalidParameter(format!("unknown rounding mode `{other}`"))),
        }
    }
}

/// A closed interval `[lo, hi]` with `lo <= hi`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Interval {
    lo: f64,
    hi: f64,
}

impl Interval {
    pub const ZERO: Interval = Interval { lo: 0.0, hi: 0.0 };
    pub const ONE: Interval = Interval { lo: 1.0, hi: 1.0 };
    /// `[+inf, +inf]`
    pub const POS_INF: Interval = Interval {
        lo: f64::INFINITY,
        hi: f64::INFINITY,
    };
    /// `[-inf, -inf]`
    pub const NEG_INF: Interval = Interval {
        lo: f64::NEG_INFINITY,
        hi: f64::NEG_INFINITY,
    };

    pub fn new(lo: f64, hi: f64) -> Result<Self> {
        if lo.is_nan() || hi.is_nan() || lo > hi {
            return Err(Error::InvalidInterval { lo, hi });
        }
        Ok(Interval { lo, hi })
    }

    /// The degenerate interval `[x, x]`.
    pub fn point(x: f64) -> Self {
        assert!(!x.is_nan(), "NaN endpoint");
        Interval { lo: x, hi: x }
    }

    /// `[x, +inf]`, the upward infinite limit anchored at `x`.
    pub fn upper_ray(x: f64) -> Result<Self> {
        Interval::new(x, f64::INFINITY)
    }

    /// `[-inf, x]`, the downward infinite limit anchored at `x`.
    pub fn lower_ray(x: f64) -> Result<Self> {
        Interval::new(f64::NEG_INFINITY, x)
    }

    #[inline]
    pub fn lo(&self) -> f64 {
        self.lo
    }

    #[inline]
    pub fn hi(&self) -> f64 {
        self.hi
    }

    pub fn is_finite(&self) -> bool {
        self.lo.is_finite() && self.hi.is_finite()
    }

    pub fn is_degenerate(&self) -> bool {
        self.lo == self.hi
    }

    pub fn width(&self) -> f64 {
        self.hi - self.lo
    }

    pub fn contains(&self, x: f64) -> bool {
        self.lo <= x && x <= self.hi
    }

    fn finite(self) -> Result<Self> {
        if self.is_finite() {
            Ok(self)
        } else {
            Err(Error::InfiniteOperand)
        }
    }

    /// Kulisch–Miranker order: both endpoints `<=`.
    pub fn leq(&self, other: &Interval) -> bool {
        self.lo <= other.lo && self.hi <= other.hi
    }

    /// Strict Kulisch–Miranker order: both endpoints `<`.
    pub fn ll(&self, other: &Interval) -> bool {
        self.lo < other.lo && self.hi < other.hi
    }

    /// Set inclusion `self ⊆ other`.
    pub fn subseteq(&self, other: &Interval) -> bool {
        other.lo <= self.lo && self.hi <= other.hi
    }

    /// Moore metric `max(|lo - lo'|, |hi - hi'|)`.
    pub fn metric(&self, other: &Interval) -> Result<f64> {
        let a = self.finite()?;
        let b = other.finite()?;
        Ok((b.lo - a.lo).abs().max((b.hi - a.hi).abs()))
    }

    pub fn midpoint(&self) -> Result<f64> {
        let a = self.finite()?;
        Ok(a.lo / 2.0 + a.hi / 2.0)
    }

    pub fn add(self, rhs: Interval) -> Result<Interval> {
        self.add_with(rhs, Rounding::Nearest)
    }

    pub fn add_with(self, rhs: Interval, rounding: Rounding) -> Result<Interval> {
        let (a, b) = (self.finite()?, rhs.finite()?);
        Ok(rounding.apply(a.lo + b.lo, a.hi + b.hi))
    }

    pub fn sub(self, rhs: Interval) -> Result<Interval> {
        self.sub_with(rhs, Rounding::Nearest)
    }

    pub fn sub_with(self, rhs: Interval, rounding: Rounding) -> Result<Interval> {
        let (a, b) = (self.finite()?, rhs.finite()?);
        Ok(rounding.apply(a.lo - b.hi, a.hi - b.lo))
    }

    pub fn mul(self, rhs: Interval) -> Result<Interval> {
        self.mul_with(rhs, Rounding::Nearest)
    }

    pub fn mul_with(self, rhs: Interval, rounding: Rounding) -> Result<Interval> {
        let (a, b) = (self.finite()?, rhs.finite()?);
        let (lo, hi) = min_max4(a.lo * b.lo, a.lo * b.hi, a.hi * b.lo, a.hi * b.hi);
        Ok(rounding.apply(lo, hi))
    }

    pub fn div(self, rhs: Interval) -> Result<Interval> {
        self.div_with(rhs, Rounding::Nearest)
    }

    pub fn div_with(self, rhs: Interval, rounding: Rounding) -> Result<Interval> {
        let (a, b) = (self.finite()?, rhs.finite()?);
        if b.contains(0.0) {
            return Err(Error::DivisionByZeroInterval);
        }
        let (lo, hi) = min_max4(a.lo / b.lo, a.lo / b.hi, a.hi / b.lo, a.hi / b.hi);
        Ok(rounding.apply(lo, hi))
    }

    pub fn neg(self) -> Interval {
        Interval {
            lo: -self.hi,
            hi: -self.lo,
        }
    }

    /// Multiplication by a real number, `A * [r, r]`.
    pub fn scale(self, r: f64) -> Result<Interval> {
        self.mul(Interval::point(r))
    }

    pub fn scale_with(self, r: f64, rounding: Rounding) -> Result<Interval> {
        self.mul_with(Interval::point(r), rounding)
    }

    /// `e^X = [e^lo, e^hi]`.
    pub fn exp(self) -> Result<Interval> {
        self.exp_with(Rounding::Nearest)
    }

    pub fn exp_with(self, rounding: Rounding) -> Result<Interval> {
        let a = self.finite()?;
        let lo = a.lo.exp();
        let hi = a.hi.exp();
        match rounding {
            // exp never goes below zero, so keep the lower bound nonnegative.
            Rounding::Outward => Ok(Interval {
                lo: lo.next_down().max(0.0),
                hi: hi.next_up(),
            }),
            Rounding::Nearest => Ok(Interval { lo, hi }),
        }
    }

    /// Componentwise square root of a nonnegative interval.
    pub fn sqrt(self) -> Result<Interval> {
        let a = self.finite()?;
        if a.lo < 0.0 {
            return Err(Error::InvalidParameter(format!(
                "square root of {a}, which has a negative endpoint"
            )));
        }
        Ok(Interval {
            lo: a.lo.sqrt(),
            hi: a.hi.sqrt(),
        })
    }

    /// `X^n` as the left-associated product `((X * X) * X) ...`.
    ///
    /// For even `n` and a sign-spanning `X` this is wider than the range of
    /// `x^n`: `[-1, 1]^2 = [-1, 1]`.
    pub fn powi_with(self, n: u32, rounding: Rounding) -> Result<Interval> {
        if n == 0 {
            return Err(Error::InvalidParameter("interval power needs n >= 1".into()));
        }
        let base = self.finite()?;
        let mut acc = base;
        for _ in 1..n {
            acc = acc.mul_with(base, rounding)?;
        }
        Ok(acc)
    }

    pub fn powi(self, n: u32) -> Result<Interval> {
        self.powi_with(n, Rounding::Nearest)
    }

    /// Smallest interval containing both.
    pub fn hull(&self, other: &Interval) -> Interval {
        Interval {
            lo: self.lo.min(other.lo),
            hi: self.hi.max(other.hi),
        }
    }
}

fn min_max4(a: f64, b: f64, c: f64, d: f64) -> (f64, f64) {
    (a.min(b).min(c).min(d), a.max(b).max(c).max(d))
}

impl fmt::Display for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{},{}]", self.lo, self.hi)
    }
}

impl FromStr for Interval {
    type Err = Error;

    /// Parses `[lo,hi]`; endpoints are decimal or scientific literals or
    /// `inf`, `+inf`, `-inf`.
    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::InvalidParameter(format!("malformed interval literal `{s}`"));
        let inner = s
            .trim()
            .strip_prefix('[')
            .and_then(|r| r.strip_suffix(']'))
            .ok_or_else(bad)?;
        let (lo, hi) = inner.split_once(',').ok_or_else(bad)?;
        let lo = parse_endpoint(lo).ok_or_else(bad)?;
        let hi = parse_endpoint(hi).ok_or_else(bad)?;
        Interval::new(lo, hi)
    }
}

fn parse_endpoint(s: &str) -> Option<f64> {
    let s = s.trim();
    match s {
        "inf" | "+inf" => return Some(f64::INFINITY),
        "-inf" => return Some(f64::NEG_INFINITY),
        _ => {}
    }
    // Rust's float parser also takes "infinity" and "nan"; only plain
    // numeric literals are accepted here.
    let numeric = !s.is_empty()
        && s
            .bytes()
            .all(|b| b.is_ascii_digit() || matches!(b, b'.' | b'e' | b'E' | b'+' | b'-'));
    if !numeric {
        return None;
    }
    s.parse::<f64>().ok().filter(|v| v.is_finite())
}

/// Supremum and infimum of a finite set of intervals under the
/// Kulisch–Miranker order.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct IntervalSetBounds {
    pub sup: Interval,
    pub inf: Interval,
}

impl IntervalSetBounds {
    pub(crate) fn singleton(x: Interval) -> Self {
        IntervalSetBounds { sup: x, inf: x }
    }

    pub(crate) fn include(&mut self, x: Interval) {
        self.sup = Interval {
            lo: self.sup.lo.max(x.lo),
            hi: self.sup.hi.max(x.hi),
        };
        self.inf = Interval {
            lo: self.inf.lo.min(x.lo),
            hi: self.inf.hi.min(x.hi),
        };
    }
}

/// Componentwise bounds: `sup = [max lo, max hi]`, `inf = [min lo, min hi]`.
pub fn bounds_of_set<I>(xs: I) -> Result<IntervalSetBounds>
where
    I: IntoIterator<Item = Interval>,
{
    let mut it = xs.into_iter();
    let first = it.next().ok_or(Error::EmptySet)?.finite()?;
    let mut bounds = IntervalSetBounds::singleton(first);
    for x in it {
        bounds.include(x.finite()?);
    }
    Ok(bounds)
}

impl Serialize for Interval {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut tuple = serializer.serialize_tuple(2)?;
        for v in [self.lo, self.hi] {
            if v.is_finite() {
                tuple.serialize_element(&v)?;
            } else if v > 0.0 {
                tuple.serialize_element("inf")?;
            } else {
                tuple.serialize_element("-inf")?;
            }
        }
        tuple.end()
    }
}

#[derive(Deserialize)]
#[serde(untagged)]
enum Endpoint {
    Num(f64),
    Text(String),
}

impl Endpoint {
    fn value<E: de::Error>(self) -> std::result::Result<f64, E> {
        match self {
            Endpoint::Num(v) => Ok(v),
            Endpoint::Text(s) => match s.as_str() {
                "inf" | "+inf" => Ok(f64::INFINITY),
                "-inf" => Ok(f64::NEG_INFINITY),
                _ => Err(E::custom(format!("invalid interval endpoint `{s}`"))),
            },
        }
    }
}

impl<'de> Deserialize<'de> for Interval {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        struct IntervalVisitor;

        impl<'de> Visitor<'de> for IntervalVisitor {
            type Value = Interval;

            fn expecting(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                f.write_str("a two-element array [lo, hi]")
            }

            fn visit_seq<A: SeqAccess<'de>>(self, mut seq: A) -> std::result::Result<Interval, A::Error> {
                let lo: Endpoint = seq
                    .next_element()?
                    .ok_or_else(|| de::Error::invalid_length(0, &self))?;
                let hi: Endpoint = seq
                    .next_element()?
                    .ok_or_else(|| de::Error::invalid_length(1, &self))?;
                if seq.next_element::<de::IgnoredAny>()?.is_some() {
                    return Err(de::Error::invalid_length(3, &self));
                }
                Interval::new(lo.value()?, hi.value()?).map_err(de::Error::custom)
            }
        }

        deserializer.deserialize_tuple(2, IntervalVisitor)
    }
}
