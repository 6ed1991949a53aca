//! Real partitions, order boxes `I_[A,B]`, and the grid partitions of a box
//! induced by a pair of real partitions.

use crate::error::{Error, Result};
use crate::interval::Interval;

/// Absolute tolerance for deciding that an interval lies on the diagonal of
/// a box.
pub const DIAGONAL_TOL: f64 = 1e-9;

/// A strictly increasing finite sequence of reals with at least two points.
#[derive(Debug, Clone, PartialEq)]
pub struct RealPartition {
    points: Vec<f64>,
}

impl RealPartition {
    pub fn new(points: Vec<f64>) -> Result<Self> {
        if points.len() < 2 {
            return Err(Error::InvalidPartition("needs at least two points".into()));
        }
        if points.iter().any(|p| !p.is_finite()) {
            return Err(Error::InvalidPartition("non-finite point".into()));
        }
        if points.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::InvalidPartition("points must be strictly increasing".into()));
        }
        Ok(RealPartition { points })
    }

    /// `a + (k/n)(b - a)` for `k = 0..=n`, with the last point exactly `b`.
    pub fn uniform(a: f64, b: f64, n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidPartition("n must be positive".into()));
        }
        let width = b - a;
        let mut points: Vec<f64> = (0..n)
            .map(|k| a + width * (k as f64 / n as f64))
            .collect();
        points.push(b);
        RealPartition::new(points)
    }

    pub fn points(&self) -> &[f64] {
        &self.points
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn first(&self) -> f64 {
        self.points[0]
    }

    pub fn last(&self) -> f64 {
        self.points[self.points.len() - 1]
    }

    pub fn contains(&self, x: f64) -> bool {
        self.points.binary_search_by(|p| p.total_cmp(&x)).is_ok()
    }

    pub fn is_subset_of(&self, other: &RealPartition) -> bool {
        self.points.iter().all(|&p| other.contains(p))
    }

    pub fn union(&self, other: &RealPartition) -> RealPartition {
        let mut points = Vec::with_capacity(self.len() + other.len());
        let (mut i, mut j) = (0, 0);
        while i < self.len() || j < other.len() {
            let next = match (self.points.get(i), other.points.get(j)) {
                (Some(&x), Some(&y)) if x == y => {
                    i += 1;
                    j += 1;
                    x
                }
                (Some(&x), Some(&y)) if x < y => {
                    i += 1;
                    x
                }
                (_, Some(&y)) => {
                    j += 1;
                    y
                }
                (Some(&x), None) => {
                    i += 1;
                    x
                }
                (None, None) => unreachable!(),
            };
            points.push(next);
        }
        RealPartition { points }
    }

    /// Common points; callers guarantee shared endpoints, so at least two
    /// points survive.
    pub fn intersection(&self, other: &RealPartition) -> RealPartition {
        let points = self
            .points
            .iter()
            .copied()
            .filter(|&p| other.contains(p))
            .collect();
        RealPartition { points }
    }

    pub fn with_point(&self, x: f64) -> RealPartition {
        match self.points.binary_search_by(|p| p.total_cmp(&x)) {
            Ok(_) => self.clone(),
            Err(pos) => {
                let mut points = self.points.clone();
                points.insert(pos, x);
                RealPartition { points }
            }
        }
    }
}

/// The order interval `I_[A,B] = { X | A <= X <= B }` with `A << B`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OrderBox {
    a: Interval,
    b: Interval,
}

impl OrderBox {
    pub fn new(a: Interval, b: Interval) -> Result<Self> {
        if !a.is_finite() || !b.is_finite() || !a.ll(&b) {
            return Err(Error::DegenerateBox { a, b });
        }
        Ok(OrderBox { a, b })
    }

    pub fn a(&self) -> Interval {
        self.a
    }

    pub fn b(&self) -> Interval {
        self.b
    }

    /// Both corners degenerate: the classical Moore–Yang case.
    pub fn is_classical(&self) -> bool {
        self.a.is_degenerate() && self.b.is_degenerate()
    }

    pub fn contains(&self, x: &Interval) -> bool {
        self.a.leq(x) && x.leq(&self.b)
    }

    /// `d_M(A, B)`.
    pub fn size(&self) -> f64 {
        (self.b.lo() - self.a.lo()).max(self.b.hi() - self.a.hi())
    }

    /// Length of the diagonal's parameter range `b.lo - a.lo`.
    pub fn lower_width(&self) -> f64 {
        self.b.lo() - self.a.lo()
    }

    /// Upper endpoint of the diagonal interval whose lower endpoint is `x`:
    /// `a.hi + (b.hi - a.hi) / (b.lo - a.lo) * (x - a.lo)`.
    pub fn diagonal_upper(&self, x: f64) -> f64 {
        if x == self.b.lo() {
            return self.b.hi();
        }
        let t = (x - self.a.lo()) / self.lower_width();
        // the exact value is >= x; rounding must not push it below
        (self.a.hi() + (self.b.hi() - self.a.hi()) * t).max(x)
    }

    /// The diagonal interval `[x, diagonal_upper(x)]`.
    pub fn diagonal_at(&self, x: f64) -> Result<Interval> {
        let (lo, hi) = (self.a.lo(), self.b.lo());
        if !(lo <= x && x <= hi) {
            return Err(Error::OutOfDomain { x, lo, hi });
        }
        Interval::new(x, self.diagonal_upper(x))
    }

    pub fn is_on_diagonal(&self, c: &Interval) -> bool {
        self.a.lo() <= c.lo()
            && c.lo() <= self.b.lo()
            && (c.hi() - self.diagonal_upper(c.lo())).abs() <= DIAGONAL_TOL
    }
}

/// A partition of `I_[A,B]` coming from `t1 x t2`, where `t1` partitions
/// `[a.lo, b.lo]` and `t2` partitions `[a.hi, b.hi]`. Only corners
/// `[x_i, y_j]` with `x_i <= y_j` belong to the partition.
#[derive(Debug, Clone, PartialEq)]
pub struct BoxPartition {
    domain: OrderBox,
    t1: RealPartition,
    t2: RealPartition,
}

impl BoxPartition {
    pub fn new(domain: OrderBox, t1: RealPartition, t2: RealPartition) -> Result<Self> {
        let (a, b) = (domain.a(), domain.b());
        if t1.first() != a.lo() || t1.last() != b.lo() {
            return Err(Error::InvalidPartition(format!(
                "first generator must span [{}, {}]",
                a.lo(),
                b.lo()
            )));
        }
        if t2.first() != a.hi() || t2.last() != b.hi() {
            return Err(Error::InvalidPartition(format!(
                "second generator must span [{}, {}]",
                a.hi(),
                b.hi()
            )));
        }
        Ok(BoxPartition { domain, t1, t2 })
    }

    /// Coarsest partition `{A, B}`.
    pub fn top(domain: OrderBox) -> Self {
        let (a, b) = (domain.a(), domain.b());
        BoxPartition {
            domain,
            t1: RealPartition {
                points: vec![a.lo(), b.lo()],
            },
            t2: RealPartition {
                points: vec![a.hi(), b.hi()],
            },
        }
    }

    /// Partition whose diagonal corners are `X_k = [t_k, s_k]` with both
    /// generators split into `n` equal steps.
    pub fn uniform(domain: OrderBox, n: usize) -> Result<Self> {
        let (a, b) = (domain.a(), domain.b());
        let t1 = RealPartition::uniform(a.lo(), b.lo(), n)?;
        let t2 = RealPartition::uniform(a.hi(), b.hi(), n)?;
        Ok(BoxPartition { domain, t1, t2 })
    }

    /// Partition through the diagonal intervals with the given lower
    /// endpoints (each strictly inside `(a.lo, b.lo)`).
    pub fn from_diagonal(domain: OrderBox, lower_endpoints: &[f64]) -> Result<Self> {
        let mut xs: Vec<f64> = lower_endpoints.to_vec();
        xs.sort_by(f64::total_cmp);
        xs.dedup();
        let (a, b) = (domain.a(), domain.b());
        if xs.iter().any(|&x| !(a.lo() < x && x < b.lo())) {
            return Err(Error::InvalidPartition(
                "diagonal points must lie strictly inside the box".into(),
            ));
        }
        let mut t1 = vec![a.lo()];
        t1.extend(&xs);
        t1.push(b.lo());
        let mut t2 = vec![a.hi()];
        t2.extend(xs.iter().map(|&x| domain.diagonal_upper(x)));
        t2.push(b.hi());
        BoxPartition::new(domain, RealPartition::new(t1)?, RealPartition::new(t2)?)
    }

    pub fn domain(&self) -> &OrderBox {
        &self.domain
    }

    pub fn t1(&self) -> &RealPartition {
        &self.t1
    }

    pub fn t2(&self) -> &RealPartition {
        &self.t2
    }

    /// Corner `P_{i,j} = [x_i, y_j]`, absent when `x_i > y_j`.
    pub fn corner(&self, i: usize, j: usize) -> Option<Interval> {
        let x = *self.t1.points.get(i)?;
        let y = *self.t2.points.get(j)?;
        Interval::new(x, y).ok()
    }

    /// Diagonal corner `X_k = P_{k,k}`.
    pub fn diagonal(&self, k: usize) -> Option<Interval> {
        self.corner(k, k)
    }

    /// The chain `P_{0,0}, P_{1,1}, ..., P_{n,n}` traversed by Riemann sums.
    pub fn chain(&self) -> Result<Vec<Interval>> {
        if self.t1.len() != self.t2.len() {
            return Err(Error::UnequalGenerators(self.t1.len(), self.t2.len()));
        }
        (0..self.t1.len())
            .map(|k| {
                self.diagonal(k).ok_or_else(|| {
                    Error::InvalidPartition(format!(
                        "chain corner [{}, {}] is not an interval",
                        self.t1.points[k], self.t2.points[k]
                    ))
                })
            })
            .collect()
    }

    fn same_box(&self, other: &BoxPartition) -> Result<()> {
        if self.domain == other.domain {
            Ok(())
        } else {
            Err(Error::BoxMismatch)
        }
    }

    /// `self ≼ other`: every generator point of `other` is one of ours.
    pub fn is_finer(&self, other: &BoxPartition) -> Result<bool> {
        self.same_box(other)?;
        Ok(other.t1.is_subset_of(&self.t1) && other.t2.is_subset_of(&self.t2))
    }

    /// Least upper bound in the refinement order: generator unions.
    pub fn join(&self, other: &BoxPartition) -> Result<BoxPartition> {
        self.same_box(other)?;
        Ok(BoxPartition {
            domain: self.domain,
            t1: self.t1.union(&other.t1),
            t2: self.t2.union(&other.t2),
        })
    }

    /// Greatest lower bound in the refinement order: generator intersections.
    pub fn meet(&self, other: &BoxPartition) -> Result<BoxPartition> {
        self.same_box(other)?;
        Ok(BoxPartition {
            domain: self.domain,
            t1: self.t1.intersection(&other.t1),
            t2: self.t2.intersection(&other.t2),
        })
    }

    /// Refines by a point `c` of the diagonal: `t1` gains `c.lo`, `t2`
    /// gains `c.hi`.
    pub fn insert_diagonal_point(&self, c: Interval) -> Result<BoxPartition> {
        if !self.domain.is_on_diagonal(&c) {
            let expected = self.domain.diagonal_upper(c.lo());
            return Err(Error::NotOnDiagonal { point: c, expected });
        }
        if self.t1.contains(c.lo()) {
            let near = self
                .t2
                .points
                .iter()
                .any(|&y| (y - c.hi()).abs() <= DIAGONAL_TOL);
            if near {
                return Ok(self.clone());
            }
        }
        Ok(BoxPartition {
            domain: self.domain,
            t1: self.t1.with_point(c.lo()),
            t2: self.t2.with_point(c.hi()),
        })
    }
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

    #[test]
    fn real_partition_invariants() {
        assert!(RealPartition::new(vec![0.0]).is_err());
        assert!(RealPartition::new(vec![0.0, 0.0, 1.0]).is_err());
        assert!(RealPartition::new(vec![1.0, 0.0]).is_err());
        let u = RealPartition::uniform(0.0, 1.0, 4).unwrap();
        assert_eq!(u.points(), &[0.0, 0.25, 0.5, 0.75, 1.0]);
    }

    #[test]
    fn box_needs_strict_order() {
        assert!(OrderBox::new(iv(0.0, 1.0), iv(0.0, 2.0)).is_err());
        assert!(OrderBox::new(iv(1.0, 1.0), iv(0.0, 0.0)).is_err());
        assert!(OrderBox::new(iv(0.0, 1.0), Interval::upper_ray(2.0).unwrap()).is_err());
        let b = bx((0.0, 1.0), (2.0, 4.0));
        assert_eq!(b.size(), 3.0);
        assert!(b.contains(&iv(1.0, 1.5)));
    }

    #[test]
    fn uniform_partitions() {
        let p = BoxPartition::uniform(bx((0.0, 1.0), (2.0, 3.0)), 2).unwrap();
        assert_eq!(p.t1().points(), &[0.0, 1.0, 2.0]);
        assert_eq!(p.t2().points(), &[1.0, 2.0, 3.0]);
        assert_eq!(p.chain().unwrap(), vec![iv(0.0, 1.0), iv(1.0, 2.0), iv(2.0, 3.0)]);

        let p = BoxPartition::uniform(bx((0.0, 0.0), (1.0, 1.0)), 1).unwrap();
        assert_eq!(p.chain().unwrap(), vec![iv(0.0, 0.0), iv(1.0, 1.0)]);

        let p = BoxPartition::uniform(bx((0.0, 1.0), (2.0, 4.0)), 4).unwrap();
        assert_eq!(p.diagonal(2).unwrap(), iv(1.0, 2.5));
    }

    #[test]
    fn corners_outside_the_interval_set_are_absent() {
        let d = bx((0.0, 0.0), (1.0, 1.0));
        let p = BoxPartition::uniform(d, 2).unwrap();
        assert_eq!(p.corner(2, 0), None); // [1, 0]
        assert_eq!(p.corner(0, 2), Some(iv(0.0, 1.0)));
        assert_eq!(p.corner(0, 0), Some(d.a()));
        assert_eq!(p.corner(2, 2), Some(d.b()));
    }

    #[test]
    fn lattice_operations() {
        let d = bx((0.0, 0.0), (6.0, 6.0));
        let p2 = BoxPartition::uniform(d, 2).unwrap();
        let p3 = BoxPartition::uniform(d, 3).unwrap();
        let j = p2.join(&p3).unwrap();
        assert_eq!(j.t1().points(), &[0.0, 2.0, 3.0, 4.0, 6.0]);
        assert_eq!(p2.join(&p2).unwrap(), p2);
        let top = BoxPartition::top(d);
        assert_eq!(p2.meet(&top).unwrap(), top);
        assert!(j.is_finer(&p2).unwrap());
        assert!(p2.is_finer(&p2).unwrap());
        assert!(!top.is_finer(&p2).unwrap());
        assert!(p2.is_finer(&top).unwrap());

        let other = BoxPartition::top(bx((0.0, 0.0), (5.0, 6.0)));
        assert_eq!(p2.join(&other), Err(Error::BoxMismatch));
        assert_eq!(p2.is_finer(&other), Err(Error::BoxMismatch));
    }

    #[test]
    fn diagonal_insertion() {
        let d = bx((0.0, 1.0), (2.0, 3.0));
        let top = BoxPartition::top(d);
        let p = top.insert_diagonal_point(iv(1.0, 2.0)).unwrap();
        assert_eq!(p.t1().points(), &[0.0, 1.0, 2.0]);
        assert_eq!(p.t2().points(), &[1.0, 2.0, 3.0]);
        assert_eq!(top.insert_diagonal_point(d.a()).unwrap(), top);
        match top.insert_diagonal_point(iv(1.0, 1.0)) {
            Err(Error::NotOnDiagonal { expected, .. }) => assert_eq!(expected, 2.0),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn unequal_generators_have_no_chain() {
        let d = bx((0.0, 0.0), (1.0, 1.0));
        let p = BoxPartition::new(
            d,
            RealPartition::new(vec![0.0, 0.5, 1.0]).unwrap(),
            RealPartition::new(vec![0.0, 1.0]).unwrap(),
        )
        .unwrap();
        assert_eq!(p.chain(), Err(Error::UnequalGenerators(3, 2)));
        assert!(BoxPartition::new(
            d,
            RealPartition::new(vec![0.0, 0.5]).unwrap(),
            RealPartition::new(vec![0.0, 1.0]).unwrap()
        )
        .is_err());
    }
}
