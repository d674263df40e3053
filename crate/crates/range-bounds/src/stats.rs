//! Validated sample types and the range-type statistic evaluators.
//!
//! All univariate statistics operate on a [`Sample`]: a finite, ascending,
//! not-all-equal sequence of at least two reals. Bivariate statistics use a
//! [`PairedSample`], two index-paired samples of equal length (comonotone by
//! construction, since both components are sorted). Time-ordered data uses
//! [`Series`], which preserves input order.
//!
//! Everything here is a pure function of immutable inputs; all types are
//! `Send + Sync` and freely shareable across threads.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::sum::NeumaierSum;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum SampleError {
    #[error("need at least 2 values, got {0}")]
    TooShort(usize),
    #[error("non-finite value at position {0}")]
    NonFinite(usize),
    #[error("all values are equal; a positive range is required")]
    Degenerate,
    #[error("paired sequences must have equal length ({x} vs {y})")]
    LengthMismatch { x: usize, y: usize },
}

#[derive(Debug, Error, Clone, Copy, PartialEq)]
#[error("power exponent must be finite and > 0, got {0}")]
pub struct ExponentError(pub f64);

/// Positive power exponent for pairwise difference sums.
///
/// Statistic evaluation only needs `p > 0`. The closed-form envelope for the
/// power ratio additionally requires `p >= 1`; that restriction is enforced
/// where the bounds are computed, not here.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(transparent)]
pub struct PowerExponent(f64);

impl PowerExponent {
    pub fn new(p: f64) -> Result<Self, ExponentError> {
        if p.is_finite() && p > 0.0 {
            Ok(Self(p))
        } else {
            Err(ExponentError(p))
        }
    }

    #[inline]
    pub fn get(self) -> f64 {
        self.0
    }
}

fn check_finite(values: &[f64]) -> Result<(), SampleError> {
    if let Some(i) = values.iter().position(|v| !v.is_finite()) {
        return Err(SampleError::NonFinite(i));
    }
    Ok(())
}

/// Ascending, finite, not-all-equal sample of n >= 2 reals.
///
/// Construction sorts unconditionally; callers never supply ordering
/// guarantees and every operation sees one canonical form.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(into = "Vec<f64>", try_from = "Vec<f64>")]
pub struct Sample {
    values: Vec<f64>,
}

impl Sample {
    pub fn new(raw: impl Into<Vec<f64>>) -> Result<Self, SampleError> {
        let mut values = raw.into();
        if values.len() < 2 {
            return Err(SampleError::TooShort(values.len()));
        }
        check_finite(&values)?;
        values.sort_unstable_by(|a, b| a.partial_cmp(b).expect("finite values"));
        if values[0] == values[values.len() - 1] {
            return Err(SampleError::Degenerate);
        }
        Ok(Self { values })
    }

    #[inline]
    pub fn values(&self) -> &[f64] {
        &self.values
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.values.len()
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn min(&self) -> f64 {
        self.values[0]
    }

    pub fn max(&self) -> f64 {
        self.values[self.values.len() - 1]
    }

    /// Range `x_n - x_1`; strictly positive by the sample invariants.
    pub fn range(&self) -> f64 {
        self.max() - self.min()
    }

    pub fn mean(&self) -> f64 {
        self.values.iter().copied().collect::<NeumaierSum>().value() / self.len() as f64
    }

    /// Unbiased sample variance `(1/(n-1)) * sum (x_i - mean)^2`.
    pub fn sample_variance(&self) -> f64 {
        let m = self.mean();
        let ss = self
            .values
            .iter()
            .map(|x| {
                let d = x - m;
                d * d
            })
            .collect::<NeumaierSum>()
            .value();
        ss / (self.len() - 1) as f64
    }

    /// Sum of `|x_i - x_j|^p` over all index pairs `i < j`, accumulated in
    /// index order with compensated summation.
    pub fn pairwise_power_sum(&self, p: PowerExponent) -> f64 {
        let p = p.get();
        let mut acc = NeumaierSum::new();
        for i in 0..self.values.len() {
            for j in (i + 1)..self.values.len() {
                // sorted ascending, so the difference is already nonnegative
                acc.add((self.values[j] - self.values[i]).powf(p));
            }
        }
        acc.value()
    }

    /// Pairwise power sum normalized by the p-th power of the range.
    ///
    /// Lies in `[1, n(n-1)/2]` for every `p > 0` and is invariant under
    /// `x -> a*x + b` with `a > 0`.
    pub fn power_ratio(&self, p: PowerExponent) -> f64 {
        self.pairwise_power_sum(p) / self.range().powf(p.get())
    }

    /// Squared range over sample variance, `R^2 / S^2`.
    pub fn range_variance_ratio(&self) -> f64 {
        let r = self.range();
        r * r / self.sample_variance()
    }

    /// Gini mean difference via the pairwise form
    /// `2/(n(n-1)) * sum_{i<j} |x_i - x_j|`.
    pub fn gini_mean_difference(&self) -> f64 {
        self.gini_forms().pairwise
    }

    /// All three equivalent Gini mean difference formulas, each evaluated
    /// independently (they agree to 1e-12 relative; asserted in tests).
    pub fn gini_forms(&self) -> GiniForms {
        let n = self.len();
        let norm = (n * (n - 1)) as f64;

        let mut double = NeumaierSum::new();
        for i in 0..n {
            for j in 0..n {
                double.add((self.values[i] - self.values[j]).abs());
            }
        }

        let one = PowerExponent::new(1.0).expect("1 > 0");
        let pairwise = 2.0 * self.pairwise_power_sum(one) / norm;

        // rank-weighted form over the order statistics (1-based rank i)
        let mut ranked = NeumaierSum::new();
        for (i, x) in self.values.iter().enumerate() {
            let rank = (i + 1) as f64;
            ranked.add((rank - (n as f64 + 1.0) / 2.0) * x);
        }

        GiniForms {
            double_sum: double.value() / norm,
            pairwise,
            rank_weighted: 4.0 * ranked.value() / norm,
        }
    }

    /// Affine copy mapped onto [0, 1]: `(x - x_1) / (x_n - x_1)`.
    pub fn normalized(&self) -> Sample {
        let lo = self.min();
        let r = self.range();
        let values: Vec<f64> = self.values.iter().map(|x| (x - lo) / r).collect();
        Sample { values }
    }
}

impl From<Sample> for Vec<f64> {
    fn from(s: Sample) -> Self {
        s.values
    }
}

impl TryFrom<Vec<f64>> for Sample {
    type Error = SampleError;

    fn try_from(v: Vec<f64>) -> Result<Self, Self::Error> {
        Sample::new(v)
    }
}

/// The three Gini mean difference formulas.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GiniForms {
    /// `1/(n(n-1)) * sum_i sum_j |x_i - x_j|` over all ordered pairs.
    pub double_sum: f64,
    /// `2/(n(n-1)) * sum_{i<j} |x_i - x_j|`.
    pub pairwise: f64,
    /// `4/(n(n-1)) * sum_i (i - (n+1)/2) * x_(i)`.
    pub rank_weighted: f64,
}

/// Two samples of equal length, paired by index.
///
/// Both components are individually sorted, so the pairing is comonotone:
/// the hypothesis under which the covariance-ratio envelope is sharp.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PairedSample {
    x: Sample,
    y: Sample,
}

impl PairedSample {
    pub fn new(x: Sample, y: Sample) -> Result<Self, SampleError> {
        if x.len() != y.len() {
            return Err(SampleError::LengthMismatch {
                x: x.len(),
                y: y.len(),
            });
        }
        Ok(Self { x, y })
    }

    pub fn from_raw(x: impl Into<Vec<f64>>, y: impl Into<Vec<f64>>) -> Result<Self, SampleError> {
        Self::new(Sample::new(x)?, Sample::new(y)?)
    }

    #[inline]
    pub fn x(&self) -> &Sample {
        &self.x
    }

    #[inline]
    pub fn y(&self) -> &Sample {
        &self.y
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.x.len()
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        false
    }

    /// Comoment `s_xy = sum (x_i - mean_x)(y_i - mean_y)`, deviation form.
    ///
    /// Strictly positive for comonotone, non-degenerate pairs.
    pub fn comoment(&self) -> f64 {
        let mx = self.x.mean();
        let my = self.y.mean();
        self.x
            .values()
            .iter()
            .zip(self.y.values())
            .map(|(x, y)| (x - mx) * (y - my))
            .collect::<NeumaierSum>()
            .value()
    }

    /// Comoment via the moment form `sum x_i y_i - n * mean_x * mean_y`.
    pub fn comoment_moment_form(&self) -> f64 {
        let cross = self
            .x
            .values()
            .iter()
            .zip(self.y.values())
            .map(|(x, y)| x * y)
            .collect::<NeumaierSum>()
            .value();
        cross - self.len() as f64 * self.x.mean() * self.y.mean()
    }

    /// Comoment normalized by the product of the two ranges.
    ///
    /// Invariant under independent positive affine maps of x and of y.
    pub fn covariance_ratio(&self) -> f64 {
        self.comoment() / (self.x.range() * self.y.range())
    }

    /// Both components affinely mapped onto [0, 1], independently.
    pub fn normalized(&self) -> PairedSample {
        PairedSample {
            x: self.x.normalized(),
            y: self.y.normalized(),
        }
    }
}

/// A univariate or bivariate configuration; the common currency of the
/// extremizer constructors, optimizer traces, and oracle searches.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case")]
pub enum Configuration {
    Univariate { values: Sample },
    Bivariate { pair: PairedSample },
}

impl Configuration {
    pub fn n(&self) -> usize {
        match self {
            Configuration::Univariate { values } => values.len(),
            Configuration::Bivariate { pair } => pair.len(),
        }
    }
}

impl From<Sample> for Configuration {
    fn from(values: Sample) -> Self {
        Configuration::Univariate { values }
    }
}

impl From<PairedSample> for Configuration {
    fn from(pair: PairedSample) -> Self {
        Configuration::Bivariate { pair }
    }
}

/// Time-ordered finite series, at least 2 points, not all equal.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(into = "Vec<f64>", try_from = "Vec<f64>")]
pub struct Series {
    values: Vec<f64>,
}

impl Series {
    pub fn new(raw: impl Into<Vec<f64>>) -> Result<Self, SampleError> {
        let values = raw.into();
        if values.len() < 2 {
            return Err(SampleError::TooShort(values.len()));
        }
        check_finite(&values)?;
        let first = values[0];
        if values.iter().all(|v| *v == first) {
            return Err(SampleError::Degenerate);
        }
        Ok(Self { values })
    }

    #[inline]
    pub fn values(&self) -> &[f64] {
        &self.values
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.values.len()
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        false
    }

    /// Adjusted rescaled range statistic.
    ///
    /// Numerator: spread `max_j D_j - min_j D_j` of the cumulative
    /// deviations `D_j = sum_{i<=j} (X_i - mean)`. Denominator: the biased
    /// standard deviation `sqrt((1/n) sum (X_i - mean)^2)`. Nonnegative and
    /// invariant under `X -> a*X + b` with `a > 0`; the denominator is
    /// positive because degenerate series are rejected at construction.
    pub fn arrs(&self) -> f64 {
        let n = self.values.len() as f64;
        let mean = self.values.iter().copied().collect::<NeumaierSum>().value() / n;

        let mut cum = NeumaierSum::new();
        let mut hi = f64::NEG_INFINITY;
        let mut lo = f64::INFINITY;
        for x in &self.values {
            cum.add(x - mean);
            let d = cum.value();
            hi = hi.max(d);
            lo = lo.min(d);
        }

        let ss = self
            .values
            .iter()
            .map(|x| {
                let d = x - mean;
                d * d
            })
            .collect::<NeumaierSum>()
            .value();
        (hi - lo) / (ss / n).sqrt()
    }
}

impl From<Series> for Vec<f64> {
    fn from(s: Series) -> Self {
        s.values
    }
}

impl TryFrom<Vec<f64>> for Series {
    type Error = SampleError;

    fn try_from(v: Vec<f64>) -> Result<Self, Self::Error> {
        Series::new(v)
    }
}

#[derive(Debug, Error, Clone, PartialEq)]
pub enum ProfileError {
    #[error("window {0} is smaller than 2")]
    WindowTooSmall(usize),
    #[error("window {window} exceeds the series length {len}")]
    WindowTooLarge { window: usize, len: usize },
    #[error("window {window}: every block is constant, no rescaled range is defined")]
    NoValidBlocks { window: usize },
}

/// Mean rescaled range over the disjoint blocks of one window size.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct WindowRs {
    pub window: usize,
    pub mean_arrs: f64,
    /// Blocks that contributed to the mean.
    pub blocks_used: usize,
    /// Constant blocks skipped because their rescaled range is undefined.
    pub blocks_skipped: usize,
}

/// Rescaled range averaged over the `floor(n/w)` disjoint consecutive
/// blocks of each window size `w`.
///
/// Constant blocks are skipped and reported in `blocks_skipped`; a window
/// whose blocks are all constant is an error.
pub fn hurst_rs_profile(series: &Series, windows: &[usize]) -> Result<Vec<WindowRs>, ProfileError> {
    let n = series.len();
    let mut out = Vec::with_capacity(windows.len());
    for &w in windows {
        if w < 2 {
            return Err(ProfileError::WindowTooSmall(w));
        }
        if w > n {
            return Err(ProfileError::WindowTooLarge { window: w, len: n });
        }
        let mut acc = NeumaierSum::new();
        let mut used = 0usize;
        let mut skipped = 0usize;
        for block in series.values().chunks_exact(w) {
            match Series::new(block.to_vec()) {
                Ok(b) => {
                    acc.add(b.arrs());
                    used += 1;
                }
                Err(SampleError::Degenerate) => skipped += 1,
                Err(e) => unreachable!("block construction cannot fail otherwise: {e}"),
            }
        }
        if used == 0 {
            return Err(ProfileError::NoValidBlocks { window: w });
        }
        out.push(WindowRs {
            window: w,
            mean_arrs: acc.value() / used as f64,
            blocks_used: used,
            blocks_skipped: skipped,
        });
    }
    Ok(out)
}
