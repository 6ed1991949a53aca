use thiserror::Error;

use crate::expr::ParseError;
use crate::interval::Interval;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid interval [{lo}, {hi}]")]
    InvalidInterval { lo: f64, hi: f64 },

    #[error("arithmetic on an interval with an infinite endpoint")]
    InfiniteOperand,

    #[error("division by an interval containing zero")]
    DivisionByZeroInterval,

    #[error("bounds of an empty set of intervals")]
    EmptySet,

    /// A box needs `A << B` with finite corners.
    #[error("box corners {a} and {b} are not strictly ordered")]
    DegenerateBox { a: Interval, b: Interval },

    #[error("partitions belong to different boxes")]
    BoxMismatch,

    #[error("invalid partition: {0}")]
    InvalidPartition(String),

    #[error("partition generators have different lengths ({0} and {1})")]
    UnequalGenerators(usize, usize),

    #[error("{point} is not on the diagonal (expected upper endpoint {expected})")]
    NotOnDiagonal { point: Interval, expected: f64 },

    #[error("{x} lies outside [{lo}, {hi}]")]
    OutOfDomain { x: f64, lo: f64, hi: f64 },

    #[error("quadrature failed: {0}")]
    QuadratureFailure(String),

    #[error("left spectrum integral {left} exceeds right spectrum integral {right}")]
    SpectrumNotOrdered { left: f64, right: f64 },

    #[error("no convergence after {steps} steps (last estimate {last})")]
    NonConvergent { last: Interval, steps: usize },

    #[error("probe {0} is not covered by the distribution's case split")]
    AmbiguousProbe(Interval),

    #[error("variance {0} has a negative lower endpoint")]
    NegativeVariance(Interval),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error(transparent)]
    Parse(#[from] ParseError),

    #[error("{source} (at bytes {start}..{end})")]
    Located {
        start: usize,
        end: usize,
        #[source]
        source: Box<Error>,
    },
}

impl Error {
    /// Strips source-location wrappers.
    pub fn root(&self) -> &Error {
        match self {
            Error::Located { source, .. } => source.root(),
            other => other,
        }
    }

    pub fn is_non_convergent(&self) -> bool {
        matches!(self.root(), Error::NonConvergent { .. })
    }
}
