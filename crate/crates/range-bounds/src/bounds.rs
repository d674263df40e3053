//! Closed-form envelope bounds for the range-type ratios, the extremal
//! configurations that attain them, and bound-check reports.
//!
//! Univariate: for a sorted, not-all-equal sample of n reals and any
//! exponent `p >= 1`,
//!
//! ```text
//! (n-2)/2^(p-1) + 1  <=  sum_{i<j} |x_i - x_j|^p / R^p  <=  floor(n^2/4)
//! ```
//!
//! with the upper end attained by a two-block configuration (balanced split
//! of the points over the two endpoints) and the lower end by the midpoint
//! configuration (endpoints plus n-2 points at their midpoint). For `p < 1`
//! only the generic envelope `[1, n(n-1)/2]` is known; the sharp lower bound
//! there is an open question and nothing beyond the generic envelope is
//! asserted.
//!
//! Bivariate: for an index-paired pair of sorted samples,
//!
//! ```text
//! 1/n  <=  s_xy / (R_x * R_y)  <=  floor(n^2/4) / n
//! ```
//!
//! attained respectively by the one-step/anti-step pair and the balanced
//! two-block pair.
//!
//! Every formula is evaluated in exact integer arithmetic where the inputs
//! allow it and converted to `f64` at the boundary, so the exact-rational
//! identities between the two univariate envelopes survive in floating
//! point.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::stats::{Configuration, PairedSample, PowerExponent, Sample};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum BoundsError {
    #[error("sample size must be at least 2, got {0}")]
    BadN(usize),
    #[error("exponent must satisfy p >= 1 for the sharp envelope, got {0}; the sharp bound below 1 is open")]
    BadP(f64),
    #[error("split variant given for a kind/size without a two-fold optimum")]
    BadVariant,
}

fn check_n(n: usize) -> Result<(), BoundsError> {
    if n < 2 {
        Err(BoundsError::BadN(n))
    } else {
        Ok(())
    }
}

/// A closed lower/upper envelope.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Bounds {
    pub lower: f64,
    pub upper: f64,
}

/// Sharp upper bound of the power ratio for any `p >= 1`:
/// `n^2/4` for even n, `(n^2-1)/4` for odd n (both equal `floor(n^2/4)`).
pub fn power_ratio_upper(n: usize) -> Result<f64, BoundsError> {
    check_n(n)?;
    let n = n as u128;
    Ok((n * n / 4) as f64)
}

/// Sharp lower bound of the power ratio, `(n-2)/2^(p-1) + 1`, valid for
/// `p >= 1`. Rejects `p < 1` rather than extrapolating: the sharp bound
/// below 1 is not established, only the generic envelope applies there.
pub fn power_ratio_lower(n: usize, p: f64) -> Result<f64, BoundsError> {
    check_n(n)?;
    if !(p.is_finite() && p >= 1.0) {
        return Err(BoundsError::BadP(p));
    }
    Ok((n - 2) as f64 / 2f64.powf(p - 1.0) + 1.0)
}

/// Sharp envelope of the power ratio for `p >= 1`.
pub fn power_ratio_envelope(n: usize, p: f64) -> Result<Bounds, BoundsError> {
    Ok(Bounds {
        lower: power_ratio_lower(n, p)?,
        upper: power_ratio_upper(n)?,
    })
}

/// Generic envelope `[1, n(n-1)/2]`, valid for every `p > 0`.
pub fn power_ratio_generic(n: usize) -> Result<Bounds, BoundsError> {
    check_n(n)?;
    let n = n as u128;
    Ok(Bounds {
        lower: 1.0,
        upper: (n * (n - 1) / 2) as f64,
    })
}

/// Sharp envelope of the squared-range-to-variance ratio `R^2/S^2`:
/// upper `2(n-1)`; lower `4(n-1)/n` for even n, `4n/(n+1)` for odd n.
///
/// Each endpoint is a single division of exactly representable integers, so
/// it equals `n(n-1)` divided by the corresponding power-ratio endpoint at
/// `p = 2` bit for bit.
pub fn range_variance_bounds(n: usize) -> Result<Bounds, BoundsError> {
    check_n(n)?;
    let nf = n as f64;
    let lower = if n % 2 == 0 {
        4.0 * (nf - 1.0) / nf
    } else {
        4.0 * nf / (nf + 1.0)
    };
    Ok(Bounds {
        lower,
        upper: 2.0 * (nf - 1.0),
    })
}

/// Sharp envelope of the covariance ratio for comonotone pairs:
/// lower `1/n`; upper `n/4` for even n, `(n^2-1)/(4n)` for odd n.
pub fn covariance_ratio_bounds(n: usize) -> Result<Bounds, BoundsError> {
    check_n(n)?;
    let nf = n as f64;
    let upper = if n % 2 == 0 {
        nf / 4.0
    } else {
        (nf * nf - 1.0) / (4.0 * nf)
    };
    Ok(Bounds {
        lower: 1.0 / nf,
        upper,
    })
}

/// Which extremal family to construct: `t1_*` are the univariate
/// power-ratio extremizers, `t2_*` the bivariate covariance-ratio ones;
/// `upper`/`lower` pick the envelope side attained.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ExtremalKind {
    T1Upper,
    T1Lower,
    T2Upper,
    T2Lower,
}

/// Disambiguates the two-fold optima: the odd-n upper split (larger block
/// low or high) and the orientation of the bivariate lower pair.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SplitVariant {
    SplitLow,
    SplitHigh,
}

fn two_block(n: usize, zeros: usize) -> Sample {
    let mut v = vec![0.0; zeros];
    v.extend(std::iter::repeat(1.0).take(n - zeros));
    Sample::new(v).expect("two-block configuration is valid")
}

fn t1_upper_sample(n: usize, variant: Option<SplitVariant>) -> Result<Sample, BoundsError> {
    if n % 2 == 0 {
        if variant.is_some() {
            return Err(BoundsError::BadVariant);
        }
        Ok(two_block(n, n / 2))
    } else {
        // both balanced splits are optimal; default to the larger low block
        let zeros = match variant.unwrap_or(SplitVariant::SplitLow) {
            SplitVariant::SplitLow => n / 2 + 1,
            SplitVariant::SplitHigh => n / 2,
        };
        Ok(two_block(n, zeros))
    }
}

/// Canonical extremal configuration on [0, 1].
///
/// Affine invariance of the ratios makes the unit-interval representative
/// lossless. Evaluating the matching statistic on the result reproduces the
/// corresponding bound to 1e-12 relative.
pub fn extremal_config(
    kind: ExtremalKind,
    variant: Option<SplitVariant>,
    n: usize,
) -> Result<Configuration, BoundsError> {
    check_n(n)?;
    match kind {
        ExtremalKind::T1Upper => Ok(t1_upper_sample(n, variant)?.into()),
        ExtremalKind::T1Lower => {
            if variant.is_some() {
                return Err(BoundsError::BadVariant);
            }
            let mut v = vec![0.5; n];
            v[0] = 0.0;
            v[n - 1] = 1.0;
            Ok(Sample::new(v).expect("midpoint configuration is valid").into())
        }
        ExtremalKind::T2Upper => {
            let s = t1_upper_sample(n, variant)?;
            Ok(PairedSample::new(s.clone(), s)
                .expect("equal lengths")
                .into())
        }
        ExtremalKind::T2Lower => {
            let step_up = two_block(n, 1); // (0, 1, ..., 1)
            let step_down = two_block(n, n - 1); // (0, ..., 0, 1)
            let (x, y) = match variant.unwrap_or(SplitVariant::SplitLow) {
                SplitVariant::SplitLow => (step_up, step_down),
                SplitVariant::SplitHigh => (step_down, step_up),
            };
            Ok(PairedSample::new(x, y).expect("equal lengths").into())
        }
    }
}

/// Statistic a [`BoundsReport`] refers to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum StatisticName {
    PowerRatio,
    RangeVarianceRatio,
    CovarianceRatio,
}

/// Default relative tolerance for bound checks; envelope evaluations at
/// n up to 10^4 accumulate rounding, and 1e-9 absorbs it with margin.
pub const DEFAULT_CHECK_REL_TOL: f64 = 1e-9;

/// Absolute floor under every relative comparison.
pub const ABS_TOL_FLOOR: f64 = 1e-15;

/// Outcome of evaluating a statistic against its applicable envelope.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BoundsReport {
    pub statistic_name: StatisticName,
    pub n: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub p: Option<f64>,
    pub value: f64,
    pub lower: f64,
    pub upper: f64,
    /// `value - lower`; negative means the lower bound is violated.
    pub lower_margin: f64,
    /// `upper - value`; negative means the upper bound is violated.
    pub upper_margin: f64,
    /// True iff both margins are at least `-tol`.
    pub within: bool,
    /// Effective absolute tolerance used for `within`.
    pub tol: f64,
    /// True when `p < 1`: only the generic envelope applies and the sharp
    /// lower bound is an open question.
    pub open_case: bool,
}

fn build_report(
    statistic_name: StatisticName,
    n: usize,
    p: Option<f64>,
    value: f64,
    bounds: Bounds,
    rel_tol: f64,
    open_case: bool,
) -> BoundsReport {
    let scale = value.abs().max(bounds.lower.abs()).max(bounds.upper.abs());
    let tol = (rel_tol * scale).max(ABS_TOL_FLOOR);
    let lower_margin = value - bounds.lower;
    let upper_margin = bounds.upper - value;
    BoundsReport {
        statistic_name,
        n,
        p,
        value,
        lower: bounds.lower,
        upper: bounds.upper,
        lower_margin,
        upper_margin,
        within: lower_margin >= -tol && upper_margin >= -tol,
        tol,
        open_case,
    }
}

/// Evaluate the power ratio of `s` against its envelope: the sharp one for
/// `p >= 1`, the generic one (flagged `open_case`) for `0 < p < 1`.
///
/// A `within == false` result on valid input signals a floating-point
/// anomaly or a bug; it is reported, never clamped.
pub fn check_bounds_with_tol(s: &Sample, p: PowerExponent, rel_tol: f64) -> BoundsReport {
    let n = s.len();
    let value = s.power_ratio(p);
    let (bounds, open_case) = if p.get() >= 1.0 {
        (
            power_ratio_envelope(n, p.get()).expect("n >= 2, p >= 1"),
            false,
        )
    } else {
        (power_ratio_generic(n).expect("n >= 2"), true)
    };
    build_report(
        StatisticName::PowerRatio,
        n,
        Some(p.get()),
        value,
        bounds,
        rel_tol,
        open_case,
    )
}

pub fn check_bounds(s: &Sample, p: PowerExponent) -> BoundsReport {
    check_bounds_with_tol(s, p, DEFAULT_CHECK_REL_TOL)
}

/// Evaluate the covariance ratio of `ps` against the comonotone envelope.
pub fn check_bounds_bivariate_with_tol(ps: &PairedSample, rel_tol: f64) -> BoundsReport {
    let n = ps.len();
    build_report(
        StatisticName::CovarianceRatio,
        n,
        None,
        ps.covariance_ratio(),
        covariance_ratio_bounds(n).expect("n >= 2"),
        rel_tol,
        false,
    )
}

pub fn check_bounds_bivariate(ps: &PairedSample) -> BoundsReport {
    check_bounds_bivariate_with_tol(ps, DEFAULT_CHECK_REL_TOL)
}
