//! Monotone point-reallocation optimizers.
//!
//! Each optimizer mechanizes the step-by-step reallocation argument behind
//! one side of an envelope bound: it drives an arbitrary valid start to the
//! matching extremal configuration through a sequence of point moves, each
//! of which changes the objective monotonically, and records the whole
//! path as a verifiable [`MoveTrace`].
//!
//! The move set generalizes the original argument (which prescribes moves
//! only from special configurations) to a greedy/deterministic schedule.
//! Whether every single move is monotone for *all* inputs is not
//! established; the per-step assertion turns "should improve" into a
//! checked contract, so any counterexample surfaces as a
//! [`OptimizerError::MonotoneViolation`] carrying the offending move
//! instead of corrupting the trace.
//!
//! All procedures operate on normalized copies ([0, 1] per coordinate);
//! inputs are never mutated, and the recorded objective is the ratio
//! statistic of the normalized configuration (whose range product is 1).

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::bounds::{covariance_ratio_bounds, power_ratio_lower, power_ratio_upper};
use crate::stats::{Configuration, PairedSample, Sample};
use crate::sum::NeumaierSum;

/// Per-step monotonicity tolerance, relative to the objective magnitude.
pub const STEP_REL_TOL: f64 = 1e-12;

/// Terminal tolerance between the final objective and the closed-form
/// bound; the terminal value accumulates up to 3n per-step roundings.
pub const TERMINAL_REL_TOL: f64 = 1e-9;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum OptimizerError {
    #[error("optimizer requires p >= 1, got {0}")]
    BadP(f64),
    #[error("move violated trace monotonicity: {0:?}")]
    MonotoneViolation(Box<Move>),
    #[error("trace ended at {found} but the bound is {expected}")]
    TerminalMismatch { found: f64, expected: f64 },
    #[error("move budget of {budget} exceeded; the procedure did not converge")]
    MoveBudgetExceeded { budget: usize },
}

/// What a single move did.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum MoveKind {
    ToLowerBlock,
    ToUpperBlock,
    Rebalance,
    ToMidpoint,
    ComomentPushUp,
    ComomentPushDown,
    SnapAb,
}

/// Coordinate a bivariate move acts on. `snap_ab` and paired rebalances
/// move both coordinates and carry no axis.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Axis {
    X,
    Y,
}

/// One reallocation step.
///
/// `index_set` holds the indices (positions in the trace's working
/// configuration, which keeps the initial pairing) that moved together from
/// `from_position` to `to_position`. For `snap_ab` the positions refer to
/// the shared x-interior value; the y interiors move to `1 - to_position`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Move {
    pub index_set: Vec<usize>,
    pub from_position: f64,
    pub to_position: f64,
    pub kind: MoveKind,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub axis: Option<Axis>,
    pub objective_before: f64,
    pub objective_after: f64,
}

/// A full reallocation path: normalized start, ordered moves, terminal
/// configuration, and the closed-form bound the terminal value must meet.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MoveTrace {
    pub initial: Configuration,
    pub moves: Vec<Move>,
    #[serde(rename = "final")]
    pub final_config: Configuration,
    pub final_objective: f64,
    pub target_bound: f64,
}

#[derive(Clone, Copy, PartialEq)]
enum Goal {
    Maximize,
    Minimize,
}

struct TraceBuilder {
    moves: Vec<Move>,
    objective: f64,
    goal: Goal,
    budget: usize,
}

impl TraceBuilder {
    fn new(initial_objective: f64, goal: Goal, n: usize) -> Self {
        Self {
            moves: Vec::new(),
            objective: initial_objective,
            goal,
            budget: 3 * n,
        }
    }

    fn record(
        &mut self,
        index_set: Vec<usize>,
        from: f64,
        to: f64,
        kind: MoveKind,
        axis: Option<Axis>,
        objective_after: f64,
    ) -> Result<(), OptimizerError> {
        let before = self.objective;
        let mv = Move {
            index_set,
            from_position: from,
            to_position: to,
            kind,
            axis,
            objective_before: before,
            objective_after,
        };
        if self.moves.len() == self.budget {
            return Err(OptimizerError::MoveBudgetExceeded {
                budget: self.budget,
            });
        }
        let tol = (STEP_REL_TOL * before.abs()).max(1e-15);
        let ok = match self.goal {
            Goal::Maximize => objective_after >= before - tol,
            Goal::Minimize => objective_after <= before + tol,
        };
        if !ok {
            return Err(OptimizerError::MonotoneViolation(Box::new(mv)));
        }
        self.objective = objective_after;
        self.moves.push(mv);
        Ok(())
    }

    fn finish(
        self,
        initial: Configuration,
        final_config: Configuration,
        final_objective: f64,
        target_bound: f64,
    ) -> Result<MoveTrace, OptimizerError> {
        let tol = (TERMINAL_REL_TOL * target_bound.abs()).max(1e-15);
        if (final_objective - target_bound).abs() > tol {
            return Err(OptimizerError::TerminalMismatch {
                found: final_objective,
                expected: target_bound,
            });
        }
        Ok(MoveTrace {
            initial,
            moves: self.moves,
            final_config,
            final_objective,
            target_bound,
        })
    }
}

/// Pairwise p-power sum of a working vector (order irrelevant).
fn pairwise_sum(vals: &[f64], p: f64) -> f64 {
    let mut acc = NeumaierSum::new();
    for i in 0..vals.len() {
        for j in (i + 1)..vals.len() {
            acc.add((vals[i] - vals[j]).abs().powf(p));
        }
    }
    acc.value()
}

/// Objective change from moving every index of `group` (all at one common
/// value) to `to`. Within-group distances are zero before and after.
fn move_delta(vals: &[f64], p: f64, group: &[usize], to: f64) -> f64 {
    let from = vals[group[0]];
    let m = group.len() as f64;
    let mut acc = NeumaierSum::new();
    for (j, &v) in vals.iter().enumerate() {
        if group.contains(&j) {
            continue;
        }
        acc.add(m * ((to - v).abs().powf(p) - (from - v).abs().powf(p)));
    }
    acc.value()
}

fn validate_p(p: f64) -> Result<(), OptimizerError> {
    if p.is_finite() && p >= 1.0 {
        Ok(())
    } else {
        Err(OptimizerError::BadP(p))
    }
}

fn interior(v: f64) -> bool {
    v > 0.0 && v < 1.0
}

/// Drive a sample to the balanced two-block configuration, maximizing the
/// power ratio.
///
/// Schedule: repeatedly take the innermost unassigned point (closest to the
/// midpoint; ties to the lower index) and send it to whichever endpoint
/// increases the objective more (ties to the lower endpoint) — the pairwise
/// sum is convex in each coordinate, so the better endpoint never loses.
/// Once every point sits on an endpoint, rebalance one point at a time from
/// the larger block to the smaller; each rebalance changes the objective by
/// `(n1+1)(n2-1) - n1*n2 >= 0` while the blocks differ by at least two.
pub fn maximize_power_ratio(s: &Sample, p: f64) -> Result<MoveTrace, OptimizerError> {
    validate_p(p)?;
    let norm = s.normalized();
    let n = norm.len();
    let mut vals: Vec<f64> = norm.values().to_vec();
    let target = power_ratio_upper(n).expect("n >= 2");
    let mut tb = TraceBuilder::new(pairwise_sum(&vals, p), Goal::Maximize, n);

    // endpoint assignment
    loop {
        let mut pick: Option<(usize, f64)> = None;
        for (i, &v) in vals.iter().enumerate() {
            if interior(v) {
                let depth = v.min(1.0 - v);
                if pick.map_or(true, |(_, best)| depth > best) {
                    pick = Some((i, depth));
                }
            }
        }
        let Some((i, _)) = pick else { break };
        let d0 = move_delta(&vals, p, &[i], 0.0);
        let d1 = move_delta(&vals, p, &[i], 1.0);
        let (to, delta, kind) = if d1 > d0 {
            (1.0, d1, MoveKind::ToUpperBlock)
        } else {
            (0.0, d0, MoveKind::ToLowerBlock)
        };
        let from = vals[i];
        let after = tb.objective + delta;
        vals[i] = to;
        tb.record(vec![i], from, to, kind, None, after)?;
    }

    // rebalance the endpoint blocks
    loop {
        let ones = vals.iter().filter(|v| **v == 1.0).count();
        let zeros = n - ones;
        let (from, to) = if zeros >= ones + 2 {
            (0.0, 1.0)
        } else if ones >= zeros + 2 {
            (1.0, 0.0)
        } else {
            break;
        };
        let i = vals
            .iter()
            .position(|v| *v == from)
            .expect("larger block is nonempty");
        let delta = move_delta(&vals, p, &[i], to);
        let after = tb.objective + delta;
        vals[i] = to;
        tb.record(vec![i], from, to, MoveKind::Rebalance, None, after)?;
    }

    let final_sample = Sample::new(vals).expect("two-block configuration is valid");
    let final_objective = pairwise_sum(final_sample.values(), p);
    tb.finish(norm.into(), final_sample.into(), final_objective, target)
}

/// Drive a sample to the midpoint configuration, minimizing the power
/// ratio.
///
/// Schedule: shrink the lower endpoint block to a single point by moving
/// its inner members toward the middle (to the nearest interior value,
/// capped at the midpoint), then the upper block symmetrically; then
/// collapse the interior toward the midpoint, right-of-center groups first
/// (each tied group moves to its inner neighbor, capped at the midpoint),
/// then left-of-center groups, until every interior point sits at 0.5.
pub fn minimize_power_ratio(s: &Sample, p: f64) -> Result<MoveTrace, OptimizerError> {
    validate_p(p)?;
    let norm = s.normalized();
    let n = norm.len();
    let mut vals: Vec<f64> = norm.values().to_vec();
    let target = power_ratio_lower(n, p).expect("n >= 2, p >= 1");
    let mut tb = TraceBuilder::new(pairwise_sum(&vals, p), Goal::Minimize, n);

    let shrink_block = |vals: &mut Vec<f64>,
                        tb: &mut TraceBuilder,
                        endpoint: f64|
     -> Result<(), OptimizerError> {
        loop {
            let members: Vec<usize> = (0..n).filter(|&i| vals[i] == endpoint).collect();
            if members.len() <= 1 {
                return Ok(());
            }
            let to = {
                let nearest = vals
                    .iter()
                    .copied()
                    .filter(|v| interior(*v))
                    .fold(None::<f64>, |best, v| {
                        Some(match best {
                            None => v,
                            Some(b) => {
                                if (v - endpoint).abs() < (b - endpoint).abs() {
                                    v
                                } else {
                                    b
                                }
                            }
                        })
                    });
                match nearest {
                    // never move past the midpoint
                    Some(v) if (v - endpoint).abs() < 0.5 => v,
                    _ => 0.5,
                }
            };
            // the inner member of the block: last index for the lower
            // block, first index for the upper (the working vector stays
            // sorted throughout the minimization schedule)
            let i = if endpoint == 0.0 {
                *members.last().expect("non-empty")
            } else {
                members[0]
            };
            let delta = move_delta(vals, p, &[i], to);
            let after = tb.objective + delta;
            vals[i] = to;
            tb.record(vec![i], endpoint, to, MoveKind::ToMidpoint, None, after)?;
        }
    };

    shrink_block(&mut vals, &mut tb, 0.0)?;
    shrink_block(&mut vals, &mut tb, 1.0)?;

    // collapse interior groups to the midpoint, right side first
    loop {
        let above = vals
            .iter()
            .copied()
            .filter(|v| *v > 0.5 && *v < 1.0)
            .fold(f64::NEG_INFINITY, f64::max);
        let below = vals
            .iter()
            .copied()
            .filter(|v| *v < 0.5 && *v > 0.0)
            .fold(f64::INFINITY, f64::min);
        let (v, to) = if above.is_finite() {
            // inner neighbor: greatest interior value left of the group,
            // never below the midpoint
            let to = vals
                .iter()
                .copied()
                .filter(|w| *w >= 0.5 && *w < above)
                .fold(0.5, f64::max);
            (above, to)
        } else if below.is_finite() {
            let to = vals
                .iter()
                .copied()
                .filter(|w| *w <= 0.5 && *w > below)
                .fold(0.5, f64::min);
            (below, to)
        } else {
            break;
        };
        let group: Vec<usize> = (0..n).filter(|&i| vals[i] == v).collect();
        let delta = move_delta(&vals, p, &group, to);
        let after = tb.objective + delta;
        for &i in &group {
            vals[i] = to;
        }
        tb.record(group, v, to, MoveKind::ToMidpoint, None, after)?;
    }

    let final_sample = Sample::new(vals).expect("midpoint configuration is valid");
    let final_objective = pairwise_sum(final_sample.values(), p);
    tb.finish(norm.into(), final_sample.into(), final_objective, target)
}

fn mean(vals: &[f64]) -> f64 {
    vals.iter().copied().collect::<NeumaierSum>().value() / vals.len() as f64
}

fn comoment_of(xs: &[f64], ys: &[f64]) -> f64 {
    let mx = mean(xs);
    let my = mean(ys);
    xs.iter()
        .zip(ys)
        .map(|(x, y)| (x - mx) * (y - my))
        .collect::<NeumaierSum>()
        .value()
}

/// Pivot index: the smallest `k >= 1` whose `other`-coordinate is at least
/// the `other` mean. Exists because the normalized sequence runs from 0 to
/// 1 and its mean is strictly inside.
fn pivot(other: &[f64]) -> usize {
    let m = mean(other);
    other
        .iter()
        .position(|v| *v >= m)
        .expect("last element is 1 and the mean is below 1")
}

struct PairState {
    xs: Vec<f64>,
    ys: Vec<f64>,
}

impl PairState {
    fn push_one(
        &mut self,
        tb: &mut TraceBuilder,
        axis: Axis,
        i: usize,
        to: f64,
        kind: MoveKind,
    ) -> Result<(), OptimizerError> {
        let coord = match axis {
            Axis::X => &mut self.xs,
            Axis::Y => &mut self.ys,
        };
        let from = coord[i];
        if from == to {
            return Ok(());
        }
        coord[i] = to;
        let after = comoment_of(&self.xs, &self.ys);
        tb.record(vec![i], from, to, kind, Some(axis), after)
    }
}

/// Drive a comonotone pair to the balanced two-block pair, maximizing the
/// comoment.
///
/// Schedule: locate the pivot `k` where the y sequence first reaches its
/// mean; push `x_k, x_{k+1}, ...` up to 1 in order (each step changes the
/// comoment by `a (y_i - mean_y) >= 0`), then the matching y values; then
/// symmetric pushes down to 0 below the pivot; finally rebalance the split
/// toward n/2 one pair at a time, taking only strictly improving moves, so
/// odd sizes stop at the first of the two optimal splits they reach.
pub fn maximize_comoment(ps: &PairedSample) -> Result<MoveTrace, OptimizerError> {
    let norm = ps.normalized();
    let n = norm.len();
    let mut st = PairState {
        xs: norm.x().values().to_vec(),
        ys: norm.y().values().to_vec(),
    };
    let target = covariance_ratio_bounds(n).expect("n >= 2").upper;
    let mut tb = TraceBuilder::new(comoment_of(&st.xs, &st.ys), Goal::Maximize, n);

    let k = pivot(&st.ys);
    debug_assert!(k >= 1);
    for i in k..n {
        st.push_one(&mut tb, Axis::X, i, 1.0, MoveKind::ComomentPushUp)?;
    }
    for i in k..n {
        st.push_one(&mut tb, Axis::Y, i, 1.0, MoveKind::ComomentPushUp)?;
    }
    for i in (0..k).rev() {
        st.push_one(&mut tb, Axis::X, i, 0.0, MoveKind::ComomentPushDown)?;
    }
    for i in (0..k).rev() {
        st.push_one(&mut tb, Axis::Y, i, 0.0, MoveKind::ComomentPushDown)?;
    }

    // rebalance the paired split toward n/2, strictly improving moves only
    loop {
        let ones = st.xs.iter().filter(|v| **v == 1.0).count();
        let zeros = n - ones;
        let (i, from, to) = if ones >= zeros + 2 {
            let i = st.xs.iter().position(|v| *v == 1.0).expect("ones > 0");
            (i, 1.0, 0.0)
        } else if zeros >= ones + 2 {
            let i = st.xs.iter().rposition(|v| *v == 0.0).expect("zeros > 0");
            (i, 0.0, 1.0)
        } else {
            break;
        };
        st.xs[i] = to;
        st.ys[i] = to;
        let after = comoment_of(&st.xs, &st.ys);
        tb.record(vec![i], from, to, MoveKind::Rebalance, None, after)?;
    }

    let final_pair = PairedSample::from_raw(st.xs, st.ys).expect("two-block pair is valid");
    let final_objective = final_pair.covariance_ratio();
    tb.finish(norm.into(), final_pair.into(), final_objective, target)
}

/// Drive a comonotone pair to a one-step/anti-step pair, minimizing the
/// comoment.
///
/// Schedule: pull the x interior to the common value just below the pivot
/// (each pull changes the comoment by `-a (y_i - mean_y) <= 0` above the
/// pivot and `a (y_i - mean_y) <= 0` below it), then the y interior
/// symmetrically against the new x mean, reaching shapes
/// `x = (0, a, ..., a, 1)` and `y = (0, b, ..., b, 1)`; finally snap
/// `(a, b)` to `(1, 0)` if `a >= b`, else `(0, 1)`, a single move whose
/// change `-(n-2)/n * [ab + (1-a)(1-b)]` is never positive.
pub fn minimize_comoment(ps: &PairedSample) -> Result<MoveTrace, OptimizerError> {
    let norm = ps.normalized();
    let n = norm.len();
    let mut st = PairState {
        xs: norm.x().values().to_vec(),
        ys: norm.y().values().to_vec(),
    };
    let target = covariance_ratio_bounds(n).expect("n >= 2").lower;
    let mut tb = TraceBuilder::new(comoment_of(&st.xs, &st.ys), Goal::Minimize, n);

    // flatten the interior of `axis` to the value just below the pivot
    // (pivot computed against the other coordinate's mean)
    let flatten = |st: &mut PairState, tb: &mut TraceBuilder, axis: Axis| {
        let k = match axis {
            Axis::X => pivot(&st.ys),
            Axis::Y => pivot(&st.xs),
        };
        let level = match axis {
            Axis::X => st.xs[k - 1],
            Axis::Y => st.ys[k - 1],
        };
        for i in k..=n.saturating_sub(2) {
            st.push_one(tb, axis, i, level, MoveKind::ComomentPushDown)?;
        }
        for i in (1..k.saturating_sub(1)).rev() {
            st.push_one(tb, axis, i, level, MoveKind::ComomentPushUp)?;
        }
        Ok::<f64, OptimizerError>(level)
    };

    let a = flatten(&mut st, &mut tb, Axis::X)?;
    let b = flatten(&mut st, &mut tb, Axis::Y)?;

    if n > 2 {
        let (ta, tb_y) = if a >= b { (1.0, 0.0) } else { (0.0, 1.0) };
        if a != ta || b != tb_y {
            for i in 1..n - 1 {
                st.xs[i] = ta;
                st.ys[i] = tb_y;
            }
            let after = comoment_of(&st.xs, &st.ys);
            tb.record(
                (1..n - 1).collect(),
                a,
                ta,
                MoveKind::SnapAb,
                None,
                after,
            )?;
        }
    }

    let final_pair = PairedSample::from_raw(st.xs, st.ys).expect("step pair is valid");
    let final_objective = final_pair.covariance_ratio();
    tb.finish(norm.into(), final_pair.into(), final_objective, target)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::stats::PowerExponent;

    fn sample(v: &[f64]) -> Sample {
        Sample::new(v.to_vec()).unwrap()
    }

    fn close(a: f64, b: f64) {
        let tol = 1e-9 * a.abs().max(b.abs()).max(1e-3);
        assert!((a - b).abs() <= tol, "{a} vs {b}");
    }

    fn assert_trace_chains(trace: &MoveTrace) {
        let mut prev: Option<f64> = None;
        for mv in &trace.moves {
            if let Some(p) = prev {
                assert_eq!(mv.objective_before, p, "trace objectives must chain");
            }
            prev = Some(mv.objective_after);
        }
    }

    #[test]
    fn maximize_reaches_the_balanced_two_block() {
        let t = maximize_power_ratio(&sample(&[0.0, 0.4, 1.0]), 2.0).unwrap();
        close(t.final_objective, 2.0);
        match &t.final_config {
            Configuration::Univariate { values } => {
                assert_eq!(values.values(), &[0.0, 0.0, 1.0])
            }
            _ => panic!(),
        }
        assert_trace_chains(&t);

        let t = maximize_power_ratio(&sample(&[0.0, 0.2, 0.7, 1.0]), 1.5).unwrap();
        close(t.final_objective, 4.0);
        assert!(t.moves.len() <= 12);
    }

    #[test]
    fn maximize_on_an_extremal_start_is_a_no_op() {
        let t = maximize_power_ratio(&sample(&[0.0, 0.0, 1.0, 1.0]), 1.0).unwrap();
        assert!(t.moves.is_empty());
        close(t.final_objective, 4.0);
    }

    #[test]
    fn minimize_reaches_the_midpoint_configuration() {
        let t = minimize_power_ratio(&sample(&[0.0, 0.0, 1.0, 1.0]), 2.0).unwrap();
        close(t.final_objective, 2.0);
        match &t.final_config {
            Configuration::Univariate { values } => {
                assert_eq!(values.values(), &[0.0, 0.5, 0.5, 1.0])
            }
            _ => panic!(),
        }

        let t = minimize_power_ratio(&sample(&[0.0, 0.1, 0.9, 1.0]), 1.0).unwrap();
        close(t.final_objective, 3.0);
        match &t.final_config {
            Configuration::Univariate { values } => {
                assert_eq!(values.values(), &[0.0, 0.5, 0.5, 1.0])
            }
            _ => panic!(),
        }
        assert_trace_chains(&t);
    }

    #[test]
    fn minimize_on_an_extremal_start_is_a_no_op() {
        let t = minimize_power_ratio(&sample(&[0.0, 0.5, 0.5, 1.0]), 2.0).unwrap();
        assert!(t.moves.is_empty());
        close(t.final_objective, 2.0);
    }

    #[test]
    fn bad_exponent_is_rejected() {
        assert_eq!(
            maximize_power_ratio(&sample(&[0.0, 1.0]), 0.5).unwrap_err(),
            OptimizerError::BadP(0.5)
        );
        assert_eq!(
            minimize_power_ratio(&sample(&[0.0, 1.0]), f64::NAN).unwrap_err(),
            OptimizerError::BadP(f64::NAN)
        );
    }

    #[test]
    fn comoment_maximizer_examples() {
        let ps = PairedSample::from_raw(vec![0.0, 0.0, 1.0, 1.0], vec![0.0, 0.0, 1.0, 1.0]).unwrap();
        let t = maximize_comoment(&ps).unwrap();
        assert!(t.moves.is_empty());
        close(t.final_objective, 1.0);

        let ps = PairedSample::from_raw(vec![0.0, 0.5, 1.0], vec![0.0, 0.5, 1.0]).unwrap();
        let t = maximize_comoment(&ps).unwrap();
        close(t.final_objective, 2.0 / 3.0);

        let ps =
            PairedSample::from_raw(vec![0.0, 0.3, 0.6, 1.0], vec![0.0, 0.2, 0.9, 1.0]).unwrap();
        let t = maximize_comoment(&ps).unwrap();
        close(t.final_objective, 1.0);
        assert_trace_chains(&t);
    }

    #[test]
    fn comoment_minimizer_examples() {
        let ps =
            PairedSample::from_raw(vec![0.0, 1.0, 1.0, 1.0], vec![0.0, 0.0, 0.0, 1.0]).unwrap();
        let t = minimize_comoment(&ps).unwrap();
        assert!(t.moves.is_empty());
        close(t.final_objective, 0.25);

        let ps = PairedSample::from_raw(vec![0.0, 0.5, 1.0], vec![0.0, 0.5, 1.0]).unwrap();
        let t = minimize_comoment(&ps).unwrap();
        close(t.final_objective, 1.0 / 3.0);

        let ps =
            PairedSample::from_raw(vec![0.0, 0.2, 0.8, 1.0], vec![0.0, 0.4, 0.6, 1.0]).unwrap();
        let t = minimize_comoment(&ps).unwrap();
        close(t.final_objective, 0.25);
        assert_trace_chains(&t);
    }

    #[test]
    fn superadditivity_drives_every_move() {
        // (a+b)^p - a^p - b^p >= 0 for p >= 1: the inequality behind each
        // monotone step, checked directly on a log-spaced grid.
        let mags: Vec<f64> = (-8..=0).map(|e| 10f64.powi(e)).collect();
        for &a in &mags {
            for &b in &mags {
                for p in [1.0, 1.5, 2.0, 3.0, 10.0] {
                    let gap = (a + b).powf(p) - a.powf(p) - b.powf(p);
                    assert!(gap >= -1e-12, "a={a} b={b} p={p} gap={gap}");
                }
            }
        }
    }

    #[test]
    fn optimizers_are_idempotent_on_their_own_output() {
        let s = sample(&[0.1, 0.3, 0.55, 0.8, 0.9]);
        for p in [1.0, 2.0, 3.0] {
            let t = maximize_power_ratio(&s, p).unwrap();
            if let Configuration::Univariate { values } = &t.final_config {
                let again = maximize_power_ratio(values, p).unwrap();
                assert!(again.moves.is_empty());
            }
            let t = minimize_power_ratio(&s, p).unwrap();
            if let Configuration::Univariate { values } = &t.final_config {
                let again = minimize_power_ratio(values, p).unwrap();
                assert!(again.moves.is_empty());
            }
        }

        let ps =
            PairedSample::from_raw(vec![0.0, 0.2, 0.7, 1.0], vec![0.0, 0.1, 0.4, 1.0]).unwrap();
        let t = maximize_comoment(&ps).unwrap();
        if let Configuration::Bivariate { pair } = &t.final_config {
            assert!(maximize_comoment(pair).unwrap().moves.is_empty());
        }
        let t = minimize_comoment(&ps).unwrap();
        if let Configuration::Bivariate { pair } = &t.final_config {
            assert!(minimize_comoment(pair).unwrap().moves.is_empty());
        }
    }

    #[test]
    fn traces_respect_the_move_budget() {
        let s = sample(&[0.0, 0.11, 0.23, 0.38, 0.45, 0.52, 0.61, 0.78, 0.9, 1.0]);
        for p in [1.0, 2.0, 10.0] {
            let t = maximize_power_ratio(&s, p).unwrap();
            assert!(t.moves.len() <= 30);
            let t = minimize_power_ratio(&s, p).unwrap();
            assert!(t.moves.len() <= 30);
        }
    }
}
