//! Independent brute-force verification by exhaustive grid enumeration.
//!
//! The oracle never consults the closed-form bounds to find extrema: it
//! enumerates every sorted configuration whose interior points live on a
//! uniform grid over [0, 1] (endpoints pinned by default, which affine
//! invariance makes lossless), evaluates the statistic on each, and keeps
//! the exact extrema with a deterministic lexicographic tie-break. Where
//! the sharp envelope applies, the results are compared against it; for
//! exponents in (0, 1) — where no sharp bound is established — the search
//! only reports evidence and asserts nothing.
//!
//! Enumeration may be partitioned across workers: the min/max reduction
//! with lexicographic tie-break is associative and commutative, so the
//! extrema and their arg-configurations are identical for any schedule.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::bounds::{covariance_ratio_bounds, power_ratio_lower, power_ratio_upper};
use crate::stats::{Configuration, PairedSample, PowerExponent, Sample};

/// Default cap on the number of configurations an enumeration may visit.
pub const DEFAULT_BUDGET: u128 = 100_000_000;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum SearchError {
    #[error("sample size must be at least 2, got {0}")]
    BadN(usize),
    #[error("grid must have at least 2 points per axis, got {0}")]
    BadK(usize),
    #[error("enumeration of {count} configurations exceeds the budget of {budget}")]
    BudgetExceeded { count: u128, budget: u128 },
    #[error("open-case exploration needs 0 < p < 1, got {0}")]
    POutsideOpenInterval(f64),
    #[error("exponent must be finite and > 0, got {0}")]
    BadExponent(f64),
    #[error("polish of a univariate configuration needs an exponent")]
    MissingExponent,
    #[error("polish step must be finite and positive, got {0}")]
    BadStep(f64),
}

/// Uniform grid on [0, 1]: values `i/(k-1)` for `i = 0..k`. The endpoints
/// are always on the grid and 0.5 is on it exactly when k is odd.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GridSpec {
    pub n: usize,
    pub k: usize,
    /// Pin the first value to 0 and the last to 1 (the default); with the
    /// pin the enumeration runs over multisets of n-2 interior values.
    pub fix_endpoints: bool,
}

impl GridSpec {
    pub fn new(n: usize, k: usize) -> Result<Self, SearchError> {
        if n < 2 {
            return Err(SearchError::BadN(n));
        }
        if k < 2 {
            return Err(SearchError::BadK(k));
        }
        Ok(Self {
            n,
            k,
            fix_endpoints: true,
        })
    }

    pub fn grid_values(&self) -> Vec<f64> {
        (0..self.k)
            .map(|i| i as f64 / (self.k - 1) as f64)
            .collect()
    }

    /// Grid spacing `1/(k-1)`.
    pub fn pitch(&self) -> f64 {
        1.0 / (self.k - 1) as f64
    }

    /// Number of configurations the enumeration visits (saturating):
    /// multisets of n-2 interior values from k grid points when the
    /// endpoints are pinned, all not-all-equal multisets of size n
    /// otherwise.
    pub fn enumeration_count(&self) -> u128 {
        if self.fix_endpoints {
            multichoose(self.k, self.n - 2)
        } else {
            multichoose(self.k, self.n).saturating_sub(self.k as u128)
        }
    }
}

/// Multiset coefficient C(k + m - 1, m), saturating at u128::MAX.
fn multichoose(k: usize, m: usize) -> u128 {
    binomial(k as u128 + m as u128 - 1, m as u128)
}

fn binomial(n: u128, mut r: u128) -> u128 {
    if r > n {
        return 0;
    }
    if r > n - r {
        r = n - r;
    }
    let mut acc: u128 = 1;
    for i in 0..r {
        // multiply before dividing keeps the quotient exact; saturate on
        // overflow, the caller only compares against a budget
        acc = match acc.checked_mul(n - i) {
            Some(v) => v / (i + 1),
            None => return u128::MAX,
        };
    }
    acc
}

/// Stream of every sorted grid configuration, each exactly once, in
/// lexicographic order of the value tuple.
pub struct ConfigIter {
    grid: Vec<f64>,
    n: usize,
    fix_endpoints: bool,
    /// grid indices of the free positions, nondecreasing; None when done
    state: Option<Vec<usize>>,
}

impl ConfigIter {
    fn assemble(&self, idx: &[usize]) -> Vec<f64> {
        let mut v = Vec::with_capacity(self.n);
        if self.fix_endpoints {
            v.push(0.0);
            v.extend(idx.iter().map(|&i| self.grid[i]));
            v.push(1.0);
        } else {
            v.extend(idx.iter().map(|&i| self.grid[i]));
        }
        v
    }

    fn advance(state: &mut Option<Vec<usize>>, k: usize) {
        let Some(idx) = state else { return };
        // next nondecreasing tuple in lexicographic order
        for pos in (0..idx.len()).rev() {
            if idx[pos] + 1 < k {
                let v = idx[pos] + 1;
                for slot in idx.iter_mut().skip(pos) {
                    *slot = v;
                }
                return;
            }
        }
        *state = None;
    }
}

impl Iterator for ConfigIter {
    type Item = Sample;

    fn next(&mut self) -> Option<Self::Item> {
        loop {
            let idx = self.state.as_ref()?;
            let vals = self.assemble(idx);
            Self::advance(&mut self.state, self.grid.len());
            if vals[0] < vals[self.n - 1] {
                // degenerate all-equal tuples only arise without the
                // endpoint pin; they are skipped, not yielded
                return Some(Sample::new(vals).expect("sorted, finite, non-degenerate"));
            }
        }
    }
}

/// Enumerate every sorted configuration of `spec`, after checking the full
/// count against `budget`.
pub fn enumerate_sorted_interiors(
    spec: &GridSpec,
    budget: u128,
) -> Result<ConfigIter, SearchError> {
    let count = spec.enumeration_count();
    if count > budget {
        return Err(SearchError::BudgetExceeded { count, budget });
    }
    let free = if spec.fix_endpoints {
        spec.n - 2
    } else {
        spec.n
    };
    Ok(ConfigIter {
        grid: spec.grid_values(),
        n: spec.n,
        fix_endpoints: spec.fix_endpoints,
        state: Some(vec![0; free]),
    })
}

/// Running extrema with a lexicographically-smallest tie-break on the
/// arg-configuration. Merging accumulators is associative and commutative,
/// so any partition of the enumeration yields the same result.
#[derive(Debug, Clone, Default)]
struct ExtremaAcc {
    min: Option<(f64, Vec<f64>)>,
    max: Option<(f64, Vec<f64>)>,
    count: u64,
}

fn lex_less(a: &[f64], b: &[f64]) -> bool {
    for (x, y) in a.iter().zip(b) {
        if x < y {
            return true;
        }
        if x > y {
            return false;
        }
    }
    a.len() < b.len()
}

impl ExtremaAcc {
    fn observe(&mut self, value: f64, key: &[f64]) {
        self.count += 1;
        match &self.min {
            Some((best, arg)) if value > *best || (value == *best && !lex_less(key, arg)) => {}
            _ => self.min = Some((value, key.to_vec())),
        }
        match &self.max {
            Some((best, arg)) if value < *best || (value == *best && !lex_less(key, arg)) => {}
            _ => self.max = Some((value, key.to_vec())),
        }
    }

    fn merge(mut self, other: ExtremaAcc) -> ExtremaAcc {
        self.count += other.count;
        self.min = match (self.min.take(), other.min) {
            (Some(a), Some(b)) => {
                if b.0 < a.0 || (b.0 == a.0 && lex_less(&b.1, &a.1)) {
                    Some(b)
                } else {
                    Some(a)
                }
            }
            (a, b) => a.or(b),
        };
        self.max = match (self.max.take(), other.max) {
            (Some(a), Some(b)) => {
                if b.0 > a.0 || (b.0 == a.0 && lex_less(&b.1, &a.1)) {
                    Some(b)
                } else {
                    Some(a)
                }
            }
            (a, b) => a.or(b),
        };
        self
    }
}

/// One refinement round of the open-case exploration.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RefineRound {
    pub round: u32,
    /// Coordinate spacing used in this round.
    pub pitch: f64,
    pub min_value: f64,
    pub argmin: Configuration,
    pub max_value: f64,
    pub argmax: Configuration,
    pub evaluated: u64,
}

/// Result of a grid search: exact extrema over the enumerated grid, their
/// configurations, and (where an envelope applies) the gaps to it.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExtremaSearchResult {
    pub spec: GridSpec,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub p: Option<f64>,
    pub min_value: f64,
    pub argmin: Configuration,
    pub max_value: f64,
    pub argmax: Configuration,
    pub count_enumerated: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub bound_lower: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub bound_upper: Option<f64>,
    /// `min_value - bound_lower`; nonnegative up to rounding whenever the
    /// bound applies.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub lower_gap: Option<f64>,
    /// `bound_upper - max_value`.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub upper_gap: Option<f64>,
    /// Refinement rounds of an open-case exploration.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub refine_history: Option<Vec<RefineRound>>,
    /// Value of the midpoint configuration, `(n-2) * 2^(1-p) + 1`: the
    /// sharp lower extremizer for p >= 1, reported for comparison in the
    /// open case without any optimality claim.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub midpoint_config_value: Option<f64>,
    /// Value of the balanced two-block configuration, `floor(n^2/4)`,
    /// independent of p; the sharp upper extremizer for p >= 1.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub two_block_value: Option<f64>,
}

fn univariate_acc(spec: &GridSpec, budget: u128, p: PowerExponent) -> Result<ExtremaAcc, SearchError> {
    let count = spec.enumeration_count();
    if count > budget {
        return Err(SearchError::BudgetExceeded {
            count,
            budget,
        });
    }
    if spec.fix_endpoints && spec.n > 2 {
        // partition by the first interior value; each partition enumerates
        // independently and the merge is schedule-independent
        Ok((0..spec.k)
            .into_par_iter()
            .map(|first| {
                let mut acc = ExtremaAcc::default();
                let iter = ConfigIter {
                    grid: spec.grid_values(),
                    n: spec.n,
                    fix_endpoints: true,
                    state: Some(vec![first; spec.n - 2]),
                };
                for s in iter {
                    let key = s.values().to_vec();
                    if key[1] != first as f64 / (spec.k - 1) as f64 {
                        break; // wandered into the next partition
                    }
                    acc.observe(s.power_ratio(p), &key);
                }
                acc
            })
            .reduce(ExtremaAcc::default, ExtremaAcc::merge))
    } else {
        let mut acc = ExtremaAcc::default();
        for s in enumerate_sorted_interiors(spec, budget)? {
            acc.observe(s.power_ratio(p), s.values());
        }
        Ok(acc)
    }
}

fn sample_from(vals: &[f64]) -> Sample {
    Sample::new(vals.to_vec()).expect("enumerated configurations are valid")
}

/// Exhaustive extrema of the power ratio over the grid. For `p >= 1` the
/// sharp envelope is attached and the gaps reported.
pub fn brute_force_power_extrema(
    spec: &GridSpec,
    p: PowerExponent,
    budget: u128,
) -> Result<ExtremaSearchResult, SearchError> {
    let acc = univariate_acc(spec, budget, p)?;
    let (min_value, argmin) = acc.min.expect("enumeration is never empty");
    let (max_value, argmax) = acc.max.expect("enumeration is never empty");
    let (bound_lower, bound_upper) = if p.get() >= 1.0 {
        (
            Some(power_ratio_lower(spec.n, p.get()).expect("n >= 2")),
            Some(power_ratio_upper(spec.n).expect("n >= 2")),
        )
    } else {
        (None, None)
    };
    Ok(ExtremaSearchResult {
        spec: *spec,
        p: Some(p.get()),
        min_value,
        argmin: sample_from(&argmin).into(),
        max_value,
        argmax: sample_from(&argmax).into(),
        count_enumerated: acc.count,
        bound_lower,
        bound_upper,
        lower_gap: bound_lower.map(|b| min_value - b),
        upper_gap: bound_upper.map(|b| b - max_value),
        refine_history: None,
        midpoint_config_value: None,
        two_block_value: None,
    })
}

/// Exhaustive extrema of the covariance ratio over all pairs of grid
/// configurations (the budget applies to the pair count).
pub fn brute_force_cov_extrema(
    spec: &GridSpec,
    budget: u128,
) -> Result<ExtremaSearchResult, SearchError> {
    let single = spec.enumeration_count();
    let count = single.saturating_mul(single);
    if count > budget {
        return Err(SearchError::BudgetExceeded { count, budget });
    }
    let xs: Vec<Sample> = enumerate_sorted_interiors(spec, budget)?.collect();

    let acc = xs
        .par_iter()
        .map(|x| {
            let mut acc = ExtremaAcc::default();
            for y in enumerate_sorted_interiors(spec, budget).expect("checked above") {
                let pair = PairedSample::new(x.clone(), y).expect("equal lengths");
                let mut key = x.values().to_vec();
                key.extend_from_slice(pair.y().values());
                acc.observe(pair.covariance_ratio(), &key);
            }
            acc
        })
        .reduce(ExtremaAcc::default, ExtremaAcc::merge);

    let bounds = covariance_ratio_bounds(spec.n).expect("n >= 2");
    let (min_value, argmin) = acc.min.expect("enumeration is never empty");
    let (max_value, argmax) = acc.max.expect("enumeration is never empty");
    let split_pair = |key: &[f64]| -> Configuration {
        let (x, y) = key.split_at(spec.n);
        PairedSample::new(sample_from(x), sample_from(y))
            .expect("equal lengths")
            .into()
    };
    Ok(ExtremaSearchResult {
        spec: *spec,
        p: None,
        min_value,
        argmin: split_pair(&argmin),
        max_value,
        argmax: split_pair(&argmax),
        count_enumerated: acc.count,
        bound_lower: Some(bounds.lower),
        bound_upper: Some(bounds.upper),
        lower_gap: Some(min_value - bounds.lower),
        upper_gap: Some(bounds.upper - max_value),
        refine_history: None,
        midpoint_config_value: None,
        two_block_value: None,
    })
}

/// Exploratory search for exponents in (0, 1), where the sharp lower bound
/// is an open question.
///
/// Runs the base grid search, then `refine_rounds` local refinements: each
/// round halves the coordinate pitch and re-enumerates a k-point window
/// centered on the incumbent argmin/argmax (clamped to [0, 1], tuples
/// re-sorted). The result carries the full round history plus the midpoint
/// and two-block configuration values for comparison; no optimality is
/// asserted.
pub fn explore_open_case(
    spec: &GridSpec,
    p: f64,
    refine_rounds: u32,
    budget: u128,
) -> Result<ExtremaSearchResult, SearchError> {
    if !(p.is_finite() && p > 0.0 && p < 1.0) {
        return Err(SearchError::POutsideOpenInterval(p));
    }
    let pe = PowerExponent::new(p).expect("0 < p < 1");
    let mut result = brute_force_power_extrema(spec, pe, budget)?;

    let free = spec.n - 2;
    let refine_count = (spec.k as u128).saturating_pow(free as u32);
    let mut history = Vec::new();
    let mut pitch = spec.pitch();
    for round in 1..=refine_rounds {
        if refine_count > budget {
            return Err(SearchError::BudgetExceeded {
                count: refine_count,
                budget,
            });
        }
        pitch /= 2.0;
        let refine = |center: &Configuration, minimize: bool| -> (f64, Configuration, u64) {
            let Configuration::Univariate { values } = center else {
                unreachable!("open case is univariate")
            };
            let interior = &values.values()[1..spec.n - 1];
            let half = (spec.k - 1) / 2;
            let axes: Vec<Vec<f64>> = interior
                .iter()
                .map(|c| {
                    (0..spec.k)
                        .map(|j| (c + (j as f64 - half as f64) * pitch).clamp(0.0, 1.0))
                        .collect()
                })
                .collect();
            let mut acc = ExtremaAcc::default();
            let mut choice = vec![0usize; free];
            loop {
                let mut vals = Vec::with_capacity(spec.n);
                vals.push(0.0);
                vals.extend(choice.iter().enumerate().map(|(d, &j)| axes[d][j]));
                vals.push(1.0);
                vals.sort_unstable_by(|a, b| a.partial_cmp(b).expect("finite"));
                let s = Sample::new(vals).expect("endpoints differ");
                acc.observe(s.power_ratio(pe), s.values());
                // odometer over the per-coordinate axes
                let mut d = free;
                loop {
                    if d == 0 {
                        break;
                    }
                    d -= 1;
                    choice[d] += 1;
                    if choice[d] < spec.k {
                        break;
                    }
                    choice[d] = 0;
                    if d == 0 {
                        break;
                    }
                }
                if choice.iter().all(|&j| j == 0) {
                    break;
                }
                if free == 0 {
                    break;
                }
            }
            let (value, arg) = if minimize {
                acc.min.clone().expect("non-empty")
            } else {
                acc.max.clone().expect("non-empty")
            };
            (value, sample_from(&arg).into(), acc.count)
        };

        let (min_value, argmin, c1) = refine(&result.argmin, true);
        let (max_value, argmax, c2) = refine(&result.argmax, false);
        if min_value < result.min_value {
            result.min_value = min_value;
            result.argmin = argmin.clone();
        }
        if max_value > result.max_value {
            result.max_value = max_value;
            result.argmax = argmax.clone();
        }
        history.push(RefineRound {
            round,
            pitch,
            min_value: result.min_value,
            argmin: result.argmin.clone(),
            max_value: result.max_value,
            argmax: result.argmax.clone(),
            evaluated: c1 + c2,
        });
    }

    result.refine_history = Some(history);
    result.midpoint_config_value = Some((spec.n - 2) as f64 * 2f64.powf(1.0 - p) + 1.0);
    result.two_block_value = Some(power_ratio_upper(spec.n).expect("n >= 2"));
    Ok(result)
}

/// Objective direction for [`local_polish`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Direction {
    Minimize,
    Maximize,
}

/// Coordinate-descent refinement of a configuration inside [0, 1] with the
/// endpoints pinned: each pass proposes `coordinate +/- step` for every
/// interior coordinate (re-sorted, clamped) and keeps improvements.
///
/// Univariate configurations polish the power ratio (exponent required);
/// bivariate ones polish the covariance ratio. The returned value never
/// regresses from the input value, and zero iterations return the input
/// unchanged.
pub fn local_polish(
    config: &Configuration,
    direction: Direction,
    p: Option<f64>,
    step: f64,
    iterations: usize,
) -> Result<(Configuration, f64), SearchError> {
    if !(step.is_finite() && step > 0.0) {
        return Err(SearchError::BadStep(step));
    }
    let better = |candidate: f64, incumbent: f64| match direction {
        Direction::Minimize => candidate < incumbent,
        Direction::Maximize => candidate > incumbent,
    };

    match config {
        Configuration::Univariate { values } => {
            let pe = PowerExponent::new(p.ok_or(SearchError::MissingExponent)?)
                .map_err(|e| SearchError::BadExponent(e.0))?;
            let norm = values.normalized();
            let n = norm.len();
            let mut vals = norm.values().to_vec();
            let mut best = norm.power_ratio(pe);
            for _ in 0..iterations {
                for i in 1..n - 1 {
                    for dir in [-1.0, 1.0] {
                        let mut cand = vals.clone();
                        cand[i] = (cand[i] + dir * step).clamp(0.0, 1.0);
                        cand.sort_unstable_by(|a, b| a.partial_cmp(b).expect("finite"));
                        let s = Sample::new(cand).expect("endpoints pinned");
                        let v = s.power_ratio(pe);
                        if better(v, best) {
                            best = v;
                            vals = s.values().to_vec();
                        }
                    }
                }
            }
            Ok((sample_from(&vals).into(), best))
        }
        Configuration::Bivariate { pair } => {
            let norm = pair.normalized();
            let n = norm.len();
            let mut xs = norm.x().values().to_vec();
            let mut ys = norm.y().values().to_vec();
            let mut best = norm.covariance_ratio();
            let eval = |xs: &[f64], ys: &[f64]| -> (PairedSample, f64) {
                let pair = PairedSample::from_raw(xs.to_vec(), ys.to_vec())
                    .expect("endpoints pinned keep both samples valid");
                let v = pair.covariance_ratio();
                (pair, v)
            };
            for _ in 0..iterations {
                for axis in 0..2 {
                    for i in 1..n - 1 {
                        for dir in [-1.0, 1.0] {
                            let mut cx = xs.clone();
                            let mut cy = ys.clone();
                            let coord = if axis == 0 { &mut cx } else { &mut cy };
                            coord[i] = (coord[i] + dir * step).clamp(0.0, 1.0);
                            coord.sort_unstable_by(|a, b| a.partial_cmp(b).expect("finite"));
                            let (pair, v) = eval(&cx, &cy);
                            if better(v, best) {
                                best = v;
                                xs = pair.x().values().to_vec();
                                ys = pair.y().values().to_vec();
                            }
                        }
                    }
                }
            }
            let (pair, _) = eval(&xs, &ys);
            Ok((pair.into(), best))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bounds::{extremal_config, ExtremalKind};

    fn close(a: f64, b: f64) {
        let tol = 1e-12 * a.abs().max(b.abs()).max(1e-3);
        assert!((a - b).abs() <= tol, "{a} vs {b}");
    }

    fn pe(p: f64) -> PowerExponent {
        PowerExponent::new(p).unwrap()
    }

    #[test]
    fn enumeration_matches_the_multiset_count() {
        let spec = GridSpec::new(3, 3).unwrap();
        let configs: Vec<Sample> = enumerate_sorted_interiors(&spec, DEFAULT_BUDGET)
            .unwrap()
            .collect();
        assert_eq!(configs.len(), 3);
        assert_eq!(configs[0].values(), &[0.0, 0.0, 1.0]);
        assert_eq!(configs[1].values(), &[0.0, 0.5, 1.0]);
        assert_eq!(configs[2].values(), &[0.0, 1.0, 1.0]);

        let spec = GridSpec::new(4, 3).unwrap();
        assert_eq!(spec.enumeration_count(), 6);
        assert_eq!(
            enumerate_sorted_interiors(&spec, DEFAULT_BUDGET)
                .unwrap()
                .count(),
            6
        );

        for (n, k) in [(2usize, 5usize), (5, 4), (6, 3)] {
            let spec = GridSpec::new(n, k).unwrap();
            assert_eq!(
                enumerate_sorted_interiors(&spec, DEFAULT_BUDGET)
                    .unwrap()
                    .count() as u128,
                spec.enumeration_count()
            );
        }
    }

    #[test]
    fn budget_guard_reports_the_count() {
        let spec = GridSpec::new(20, 101).unwrap();
        match enumerate_sorted_interiors(&spec, DEFAULT_BUDGET) {
            Err(SearchError::BudgetExceeded { count, budget }) => {
                assert!(count > budget);
            }
            other => panic!("expected budget error, got {other:?}"),
        }
    }

    #[test]
    fn power_extrema_agree_with_the_envelope() {
        let spec = GridSpec::new(4, 3).unwrap();
        let r = brute_force_power_extrema(&spec, pe(2.0), DEFAULT_BUDGET).unwrap();
        close(r.min_value, 2.0);
        close(r.max_value, 4.0);
        match &r.argmin {
            Configuration::Univariate { values } => {
                assert_eq!(values.values(), &[0.0, 0.5, 0.5, 1.0])
            }
            _ => panic!(),
        }
        match &r.argmax {
            Configuration::Univariate { values } => {
                assert_eq!(values.values(), &[0.0, 0.0, 1.0, 1.0])
            }
            _ => panic!(),
        }
        assert_eq!(r.count_enumerated, 6);

        let spec = GridSpec::new(3, 3).unwrap();
        let r = brute_force_power_extrema(&spec, pe(1.0), DEFAULT_BUDGET).unwrap();
        close(r.min_value, 2.0);
        close(r.max_value, 2.0);

        let spec = GridSpec::new(5, 5).unwrap();
        let r = brute_force_power_extrema(&spec, pe(1.5), DEFAULT_BUDGET).unwrap();
        close(r.min_value, 3.0 / 2f64.sqrt() + 1.0);
    }

    #[test]
    fn cov_extrema_agree_with_the_envelope() {
        let spec = GridSpec::new(3, 2).unwrap();
        let r = brute_force_cov_extrema(&spec, DEFAULT_BUDGET).unwrap();
        close(r.min_value, 1.0 / 3.0);
        close(r.max_value, 2.0 / 3.0);
        assert_eq!(r.count_enumerated, 4);

        let spec = GridSpec::new(4, 2).unwrap();
        let r = brute_force_cov_extrema(&spec, DEFAULT_BUDGET).unwrap();
        close(r.min_value, 0.25);
        close(r.max_value, 1.0);

        // refining the grid does not escape the envelope
        let spec = GridSpec::new(4, 3).unwrap();
        let r = brute_force_cov_extrema(&spec, DEFAULT_BUDGET).unwrap();
        close(r.min_value, 0.25);
        close(r.max_value, 1.0);
    }

    #[test]
    fn partitioned_and_sequential_reductions_agree() {
        let spec = GridSpec::new(5, 5).unwrap();
        let parallel = brute_force_power_extrema(&spec, pe(1.5), DEFAULT_BUDGET).unwrap();
        let mut acc = ExtremaAcc::default();
        for s in enumerate_sorted_interiors(&spec, DEFAULT_BUDGET).unwrap() {
            acc.observe(s.power_ratio(pe(1.5)), s.values());
        }
        let (min_v, min_arg) = acc.min.unwrap();
        let (max_v, max_arg) = acc.max.unwrap();
        assert_eq!(parallel.min_value, min_v);
        assert_eq!(parallel.max_value, max_v);
        assert_eq!(parallel.argmin, sample_from(&min_arg).into());
        assert_eq!(parallel.argmax, sample_from(&max_arg).into());
        assert_eq!(parallel.count_enumerated as u128, spec.enumeration_count());
    }

    #[test]
    fn runs_are_deterministic() {
        let spec = GridSpec::new(5, 4).unwrap();
        let a = brute_force_power_extrema(&spec, pe(2.0), DEFAULT_BUDGET).unwrap();
        let b = brute_force_power_extrema(&spec, pe(2.0), DEFAULT_BUDGET).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn open_case_reports_without_asserting() {
        let spec = GridSpec::new(4, 21).unwrap();
        let r = explore_open_case(&spec, 0.5, 2, DEFAULT_BUDGET).unwrap();
        close(
            r.midpoint_config_value.unwrap(),
            2.0 * 2f64.sqrt() + 1.0,
        );
        assert_eq!(r.two_block_value.unwrap(), 4.0);
        assert_eq!(r.refine_history.as_ref().unwrap().len(), 2);
        assert!(r.bound_lower.is_none());

        let spec = GridSpec::new(2, 5).unwrap();
        let r = explore_open_case(&spec, 0.25, 1, DEFAULT_BUDGET).unwrap();
        close(r.min_value, 1.0);
        close(r.max_value, 1.0);

        assert_eq!(
            explore_open_case(&GridSpec::new(4, 5).unwrap(), 1.0, 0, DEFAULT_BUDGET).unwrap_err(),
            SearchError::POutsideOpenInterval(1.0)
        );
    }

    #[test]
    fn refinement_never_worsens_the_incumbent() {
        let spec = GridSpec::new(4, 11).unwrap();
        let base = brute_force_power_extrema(&spec, pe(0.5), DEFAULT_BUDGET).unwrap();
        let refined = explore_open_case(&spec, 0.5, 3, DEFAULT_BUDGET).unwrap();
        assert!(refined.min_value <= base.min_value);
        assert!(refined.max_value >= base.max_value);
    }

    #[test]
    fn polish_respects_direction_and_iteration_count() {
        let cfg = extremal_config(ExtremalKind::T1Lower, None, 5).unwrap();
        let (polished, v) =
            local_polish(&cfg, Direction::Minimize, Some(2.0), 0.05, 25).unwrap();
        close(v, power_ratio_lower(5, 2.0).unwrap());
        assert_eq!(polished, cfg);

        let (unchanged, v0) = local_polish(&cfg, Direction::Minimize, Some(2.0), 0.1, 0).unwrap();
        assert_eq!(unchanged, cfg);
        close(v0, 2.5);

        // polishing a grid argmin in the open case may only go down
        let spec = GridSpec::new(4, 5).unwrap();
        let r = brute_force_power_extrema(&spec, pe(0.5), DEFAULT_BUDGET).unwrap();
        let (_, v) = local_polish(&r.argmin, Direction::Minimize, Some(0.5), 0.01, 50).unwrap();
        assert!(v <= r.min_value + 1e-15);
    }
}
