//! Concept classes over the unit interval.
//!
//! Three classes are implemented: thresholds (`x >= t`), closed intervals,
//! and unions of at most `k` disjoint intervals. Each supports exact
//! prediction, enumeration of the dichotomies it realizes on a finite point
//! set, a deterministic representative for every realizable dichotomy, and
//! exact empirical/expected disagreement.
//!
//! Conventions, fixed once and used by every analytic formula in the crate:
//!
//! - the point domain is `[0, 1]`; parameters may be any finite reals, so
//!   e.g. the all-zero labeling is always realizable by a threshold placed
//!   beyond the data;
//! - a threshold predicts 1 iff `x >= t`; an interval `[lo, hi]` is closed
//!   on both ends;
//! - representatives are placed at gap midpoints between neighboring sample
//!   points, at the sample point itself where a run of ones touches the
//!   first or last point, and at the midpoint between the data and the
//!   domain edge when the feasible region extends past the data.

use crate::datagen::{Example, Marginal};
use serde::{Deserialize, Serialize};
use std::fmt;
use thiserror::Error;

#[derive(Debug, Error, PartialEq)]
pub enum HypothesisError {
    #[error("points must be finite, strictly increasing, and within [0, 1]")]
    BadPointList,
    #[error("hypothesis parameters are invalid: {0}")]
    BadParams(String),
    #[error("dichotomy length {got} does not match point count {want}")]
    LengthMismatch { got: usize, want: usize },
    #[error("dichotomy is not realizable by {0:?}")]
    Unrealizable(ConceptClass),
    #[error("empty sample")]
    EmptySample,
}

/// A parameterized binary classifier on `[0, 1]`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "class", rename_all = "snake_case")]
pub enum Hypothesis {
    Threshold { t: f64 },
    Interval { lo: f64, hi: f64 },
    /// Sorted, pairwise disjoint intervals; empty means constant 0.
    IntervalUnion { parts: Vec<[f64; 2]> },
}

impl Hypothesis {
    pub fn threshold(t: f64) -> Self {
        Hypothesis::Threshold { t }
    }

    pub fn interval(lo: f64, hi: f64) -> Self {
        Hypothesis::Interval { lo, hi }
    }

    pub fn union(parts: Vec<[f64; 2]>) -> Self {
        Hypothesis::IntervalUnion { parts }
    }

    /// Deterministic total prediction; 1 is encoded as `true`.
    pub fn predict(&self, x: f64) -> bool {
        match self {
            Hypothesis::Threshold { t } => x >= *t,
            Hypothesis::Interval { lo, hi } => *lo <= x && x <= *hi,
            Hypothesis::IntervalUnion { parts } => {
                parts.iter().any(|[lo, hi]| *lo <= x && x <= *hi)
            }
        }
    }

    pub fn validate(&self) -> Result<(), HypothesisError> {
        let bad = |msg: &str| Err(HypothesisError::BadParams(msg.to_string()));
        match self {
            Hypothesis::Threshold { t } => {
                if !t.is_finite() {
                    return bad("threshold must be finite");
                }
            }
            Hypothesis::Interval { lo, hi } => {
                if !lo.is_finite() || !hi.is_finite() {
                    return bad("interval endpoints must be finite");
                }
                if lo > hi {
                    return bad("interval requires lo <= hi");
                }
            }
            Hypothesis::IntervalUnion { parts } => {
                for w in parts {
                    if !w[0].is_finite() || !w[1].is_finite() {
                        return bad("union endpoints must be finite");
                    }
                    if w[0] > w[1] {
                        return bad("union interval requires lo <= hi");
                    }
                }
                if parts.windows(2).any(|p| p[0][1] >= p[1][0]) {
                    return bad("union intervals must be sorted and disjoint");
                }
            }
        }
        Ok(())
    }

    /// Parameter values at which the prediction may change; used by the
    /// exact disagreement integrator.
    fn breakpoints(&self, out: &mut Vec<f64>) {
        match self {
            Hypothesis::Threshold { t } => out.push(*t),
            Hypothesis::Interval { lo, hi } => out.extend([*lo, *hi]),
            Hypothesis::IntervalUnion { parts } => {
                for w in parts {
                    out.extend(*w);
                }
            }
        }
    }
}

/// A concept class tag plus its structural parameters.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum ConceptClass {
    Thresholds,
    Intervals,
    IntervalUnions { k: usize },
}

impl fmt::Display for ConceptClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ConceptClass::Thresholds => write!(f, "thresholds"),
            ConceptClass::Intervals => write!(f, "intervals"),
            ConceptClass::IntervalUnions { k } => write!(f, "{k}-unions"),
        }
    }
}

impl ConceptClass {
    pub fn vc_dim(&self) -> usize {
        match self {
            ConceptClass::Thresholds => 1,
            ConceptClass::Intervals => 2,
            ConceptClass::IntervalUnions { k } => 2 * k,
        }
    }

    /// Maximum number of disjoint 1-runs a member may induce on a point set.
    fn max_runs(&self) -> usize {
        match self {
            ConceptClass::Thresholds | ConceptClass::Intervals => 1,
            ConceptClass::IntervalUnions { k } => *k,
        }
    }

    pub fn contains(&self, h: &Hypothesis) -> bool {
        h.validate().is_ok()
            && match (self, h) {
                (ConceptClass::Thresholds, Hypothesis::Threshold { .. }) => true,
                (ConceptClass::Intervals, Hypothesis::Interval { .. }) => true,
                (ConceptClass::IntervalUnions { k }, Hypothesis::IntervalUnion { parts }) => {
                    parts.len() <= *k
                }
                _ => false,
            }
    }

    /// Is this labeling pattern realizable by the class? Thresholds realize
    /// exactly the zeros-then-ones patterns; interval unions realize the
    /// patterns with at most `k` maximal runs of ones.
    pub fn realizes(&self, bits: &[bool]) -> bool {
        match self {
            ConceptClass::Thresholds => !bits.windows(2).any(|w| w[0] && !w[1]),
            _ => count_runs(bits) <= self.max_runs(),
        }
    }

    /// `|project(self, points)|` for a point set of size `m`, in closed form.
    pub fn dichotomy_count(&self, m: usize) -> u64 {
        let m = m as u64;
        match self {
            ConceptClass::Thresholds => m + 1,
            ConceptClass::Intervals => m * (m + 1) / 2 + 1,
            ConceptClass::IntervalUnions { k } => {
                // Patterns with exactly r maximal 1-runs: C(m+1, 2r).
                (0..=*k as u64).map(|r| binomial(m + 1, 2 * r)).sum()
            }
        }
    }

    /// Enumerate `project(self, points)`: every labeling pattern the class
    /// realizes on the (strictly increasing) points, each exactly once, in a
    /// deterministic order. The empty point list yields the single empty
    /// dichotomy.
    ///
    /// Order contract (relied on by the learner's streamed candidate paths):
    /// thresholds are ordered by the number of leading zeros, all-ones
    /// first; intervals and unions start with the all-zero pattern, followed
    /// by run sets in depth-first lexicographic order of their index
    /// boundaries.
    pub fn project(&self, points: &[f64]) -> Result<Vec<Dichotomy>, HypothesisError> {
        validate_points(points)?;
        let m = points.len();
        let mut out = Vec::new();
        match self {
            ConceptClass::Thresholds => {
                for zeros in 0..=m {
                    let mut bits = vec![false; m];
                    bits[zeros..].fill(true);
                    out.push(Dichotomy::new(bits));
                }
            }
            _ => {
                out.push(Dichotomy::new(vec![false; m]));
                let mut runs = Vec::new();
                emit_run_sets(m, self.max_runs(), 0, &mut runs, &mut out);
            }
        }
        Ok(out)
    }

    /// A member of the class consistent with `dichotomy` on `points`,
    /// chosen by the fixed midpoint placement rule.
    pub fn representative(
        &self,
        points: &[f64],
        dichotomy: &Dichotomy,
    ) -> Result<Hypothesis, HypothesisError> {
        validate_points(points)?;
        if dichotomy.len() != points.len() {
            return Err(HypothesisError::LengthMismatch {
                got: dichotomy.len(),
                want: points.len(),
            });
        }
        if !self.realizes(dichotomy.bits()) {
            return Err(HypothesisError::Unrealizable(*self));
        }
        Ok(representative_unchecked(*self, points, dichotomy.bits()))
    }
}

/// Depth-first enumeration of run sets with at most `max_runs` runs.
/// Each run set is emitted before its extensions.
fn emit_run_sets(
    m: usize,
    max_runs: usize,
    next_start: usize,
    runs: &mut Vec<(usize, usize)>,
    out: &mut Vec<Dichotomy>,
) {
    if runs.len() == max_runs {
        return;
    }
    for i in next_start..m {
        for j in i..m {
            runs.push((i, j));
            let mut bits = vec![false; m];
            for &(s, e) in runs.iter() {
                bits[s..=e].fill(true);
            }
            out.push(Dichotomy::new(bits));
            // Another run needs a separating zero at index j+1.
            emit_run_sets(m, max_runs, j + 2, runs, out);
            runs.pop();
        }
    }
}

fn count_runs(bits: &[bool]) -> usize {
    let mut runs = 0;
    let mut prev = false;
    for &b in bits {
        if b && !prev {
            runs += 1;
        }
        prev = b;
    }
    runs
}

fn binomial(n: u64, k: u64) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * u128::from(n - i) / u128::from(i + 1);
    }
    acc as u64
}

pub(crate) fn validate_points(points: &[f64]) -> Result<(), HypothesisError> {
    let ok = points
        .iter()
        .all(|x| x.is_finite() && (0.0..=1.0).contains(x))
        && points.windows(2).all(|w| w[0] < w[1]);
    if ok {
        Ok(())
    } else {
        Err(HypothesisError::BadPointList)
    }
}

/// In the interval/union candidate enumeration over `m` points, map a
/// candidate index to its run cell: `None` is the all-zero pattern, and
/// index `>= 1` is the run `(i, j)` in lexicographic order.
pub(crate) fn single_run_cell(m: usize, index: usize) -> Option<(usize, usize)> {
    if index == 0 {
        return None;
    }
    let mut rest = index - 1;
    let mut i = 0;
    loop {
        let with_start_i = m - i;
        if rest < with_start_i {
            return Some((i, i + rest));
        }
        rest -= with_start_i;
        i += 1;
    }
}

/// A labeling pattern of a finite point set. Bit `j` is the label of the
/// `j`-th smallest point.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Dichotomy {
    bits: Vec<bool>,
}

impl Dichotomy {
    pub fn new(bits: Vec<bool>) -> Self {
        Dichotomy { bits }
    }

    pub fn bits(&self) -> &[bool] {
        &self.bits
    }

    pub fn len(&self) -> usize {
        self.bits.len()
    }

    pub fn is_empty(&self) -> bool {
        self.bits.is_empty()
    }

    /// Maximal runs of ones as inclusive index pairs.
    pub fn one_runs(&self) -> Vec<(usize, usize)> {
        let mut runs = Vec::new();
        let mut start = None;
        for (i, &b) in self.bits.iter().enumerate() {
            match (b, start) {
                (true, None) => start = Some(i),
                (false, Some(s)) => {
                    runs.push((s, i - 1));
                    start = None;
                }
                _ => {}
            }
        }
        if let Some(s) = start {
            runs.push((s, self.bits.len() - 1));
        }
        runs
    }

    pub fn to_bitstring(&self) -> String {
        self.bits.iter().map(|&b| if b { '1' } else { '0' }).collect()
    }

    pub fn from_bitstring(s: &str) -> Option<Self> {
        let mut bits = Vec::with_capacity(s.len());
        for c in s.chars() {
            match c {
                '0' => bits.push(false),
                '1' => bits.push(true),
                _ => return None,
            }
        }
        Some(Dichotomy::new(bits))
    }
}

impl Serialize for Dichotomy {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.to_bitstring())
    }
}

impl<'de> Deserialize<'de> for Dichotomy {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        Dichotomy::from_bitstring(&s)
            .ok_or_else(|| serde::de::Error::custom("dichotomy must be a string over {0,1}"))
    }
}

/// Exact empirical error of a hypothesis on a labeled sample.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct EmpiricalError {
    pub misses: usize,
    pub n: usize,
}

impl EmpiricalError {
    pub fn rate(&self) -> f64 {
        self.misses as f64 / self.n as f64
    }
}

pub fn empirical_error(
    h: &Hypothesis,
    sample: &[Example],
) -> Result<EmpiricalError, HypothesisError> {
    if sample.is_empty() {
        return Err(HypothesisError::EmptySample);
    }
    let misses = sample.iter().filter(|e| h.predict(e.x) != e.y).count();
    Ok(EmpiricalError {
        misses,
        n: sample.len(),
    })
}

/// Fraction of `points` on which the two hypotheses disagree.
pub fn empirical_disagreement(
    h1: &Hypothesis,
    h2: &Hypothesis,
    points: &[f64],
) -> Result<f64, HypothesisError> {
    if points.is_empty() {
        return Err(HypothesisError::EmptySample);
    }
    let differ = points
        .iter()
        .filter(|&&x| h1.predict(x) != h2.predict(x))
        .count();
    Ok(differ as f64 / points.len() as f64)
}

/// Exact probability mass of `{x : h1(x) != h2(x)}` under the marginal.
///
/// The disagreement predicate is piecewise constant with breakpoints at the
/// hypotheses' parameters, so the continuous part of the marginal integrates
/// cell by cell and atoms are evaluated directly. Supported in closed form
/// for every class/marginal pair in this crate.
pub fn expected_disagreement(h1: &Hypothesis, h2: &Hypothesis, marginal: &Marginal) -> f64 {
    let mut cuts = vec![0.0, 1.0];
    h1.breakpoints(&mut cuts);
    h2.breakpoints(&mut cuts);
    let mut cuts: Vec<f64> = cuts.into_iter().map(|c| c.clamp(0.0, 1.0)).collect();
    cuts.sort_by(f64::total_cmp);
    cuts.dedup();

    let differs = |x: f64| h1.predict(x) != h2.predict(x);
    let mut mass = 0.0;
    for w in cuts.windows(2) {
        let (lo, hi) = (w[0], w[1]);
        if hi > lo && differs(0.5 * (lo + hi)) {
            mass += marginal.continuous_mass_between(lo, hi);
        }
    }
    for (a, p) in marginal.atoms() {
        if differs(a) {
            mass += p;
        }
    }
    mass.clamp(0.0, 1.0)
}

/// Representative placement, assuming realizability was already checked.
pub(crate) fn representative_unchecked(
    class: ConceptClass,
    points: &[f64],
    bits: &[bool],
) -> Hypothesis {
    let m = points.len();
    match class {
        ConceptClass::Thresholds => {
            let zeros = bits.iter().take_while(|&&b| !b).count();
            let t = if m == 0 {
                0.5
            } else if zeros == 0 {
                points[0]
            } else if zeros == m {
                threshold_beyond(points)
            } else {
                0.5 * (points[zeros - 1] + points[zeros])
            };
            Hypothesis::Threshold { t }
        }
        ConceptClass::Intervals => {
            let runs = one_runs_of(bits);
            match runs.first() {
                Some(&(i, j)) => {
                    let [lo, hi] = run_interval(points, i, j);
                    Hypothesis::Interval { lo, hi }
                }
                None => {
                    let c = point_free_spot(points);
                    Hypothesis::Interval { lo: c, hi: c }
                }
            }
        }
        ConceptClass::IntervalUnions { .. } => {
            let parts = one_runs_of(bits)
                .into_iter()
                .map(|(i, j)| run_interval(points, i, j))
                .collect();
            Hypothesis::IntervalUnion { parts }
        }
    }
}

fn one_runs_of(bits: &[bool]) -> Vec<(usize, usize)> {
    Dichotomy::new(bits.to_vec()).one_runs()
}

/// Threshold representatives for every dichotomy, ordered by the number of
/// leading zeros. Strictly increasing; used by the learner's streamed
/// candidate path, and identical to what `representative` places.
pub(crate) fn threshold_params_in_order(points: &[f64]) -> Vec<f64> {
    let m = points.len();
    if m == 0 {
        return vec![0.5];
    }
    let mut ts = Vec::with_capacity(m + 1);
    ts.push(points[0]);
    for w in points.windows(2) {
        ts.push(0.5 * (w[0] + w[1]));
    }
    ts.push(threshold_beyond(points));
    ts
}

/// Interval covering points `i..=j` and excluding their neighbors:
/// endpoints sit at the touched sample point when the run reaches the edge
/// of the data, otherwise at the midpoint of the separating gap.
pub(crate) fn run_interval(points: &[f64], i: usize, j: usize) -> [f64; 2] {
    let lo = if i == 0 {
        points[0]
    } else {
        0.5 * (points[i - 1] + points[i])
    };
    let hi = if j == points.len() - 1 {
        points[j]
    } else {
        0.5 * (points[j] + points[j + 1])
    };
    [lo, hi]
}

/// A threshold strictly above every point, realizing the all-zero pattern:
/// the midpoint between the last point and the domain edge, or just past the
/// domain when the last point sits at 1.
fn threshold_beyond(points: &[f64]) -> f64 {
    let last = points[points.len() - 1];
    if last < 1.0 {
        0.5 * (last + 1.0)
    } else {
        1.5
    }
}

/// A point-free location used to realize the all-zero pattern with a
/// degenerate interval: the gap past the last point when nonempty, otherwise
/// a gap below or between the data.
pub(crate) fn point_free_spot(points: &[f64]) -> f64 {
    let m = points.len();
    if m == 0 {
        return 0.5;
    }
    let last = points[m - 1];
    if last < 1.0 {
        return 0.5 * (last + 1.0);
    }
    if points[0] > 0.0 {
        return 0.5 * points[0];
    }
    // points include both 0 and 1, so an interior gap exists
    0.5 * (points[0] + points[1])
}
