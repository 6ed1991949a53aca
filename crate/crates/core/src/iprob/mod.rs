//! Interval probability: finite interval measures and continuous interval
//! random variables.

mod distribution;
mod measure;

pub use distribution::{
    cdf, check_density, exponential_cdf_closed_form, exponential_density, gaussian_density, mean,
    nth_moment, pdf, prob_between, prob_between_report, prob_gt, prob_lt, std_dev, total_mass,
    uniform_cdf_closed_form, uniform_density, variance, BetweenReport, DensityReport, Distribution,
    DistributionSpec, ProbConfig, StdDev, Support, NORMALIZATION_TOL,
};
pub use measure::{validate_measure, Event, FiniteIntervalMeasure, MeasureReport, EXHAUSTIVE_ATOMS};
