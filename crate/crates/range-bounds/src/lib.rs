//! Range-type statistics with sharp envelope bounds.
//!
//! The crate computes the classical range-type quantities of a sorted
//! sample — pairwise p-power difference sums, the squared-range-to-variance
//! ratio, the Gini mean difference, the comoment of a comonotone pair, and
//! the adjusted rescaled range of a series — together with the sharp
//! lower/upper envelopes those ratios satisfy, the extremal configurations
//! attaining them, a monotone point-reallocation optimizer that drives any
//! start to an extremal configuration with a verifiable move trace, and an
//! independent brute-force grid oracle that reproduces the envelopes at
//! small scale and explores the open exponent range 0 < p < 1.
//!
//! Modules:
//! - [`stats`]: validated sample types and statistic evaluators,
//! - [`bounds`]: closed-form envelopes, extremizers, bound checks,
//! - [`optimizer`]: monotone reallocation traces,
//! - [`oracle`]: exhaustive grid search and local polish,
//! - [`csv`], [`report`]: the CLI's input and output formats.

pub mod bounds;
pub mod csv;
pub mod optimizer;
pub mod oracle;
pub mod report;
pub mod stats;
pub mod sum;

pub use bounds::{check_bounds, check_bounds_bivariate, extremal_config, BoundsReport};
pub use optimizer::{
    maximize_comoment, maximize_power_ratio, minimize_comoment, minimize_power_ratio, MoveTrace,
};
pub use oracle::{
    brute_force_cov_extrema, brute_force_power_extrema, explore_open_case, GridSpec,
};
pub use stats::{PairedSample, PowerExponent, Sample, Series};
