//! The end-to-end semi-private learner and the public-data ERM baseline.
//!
//! `sspp_learn` composes the pipeline: deduplicate the public points, take
//! one representative per realizable dichotomy, count each representative's
//! misses on the private sample, and select with the exponential mechanism.
//! The private data enters only through the integer miss counts, so the
//! mechanism's privacy guarantee is the learner's.
//!
//! Miss counts are exact integers. The reference path walks the
//! materialized cover entry by entry; for thresholds and intervals a
//! streamed path computes the identical counts from sorted prefix sums
//! without materializing the cover, which is what makes interval covers
//! with millions of entries practical. The two paths are interchangeable
//! and tested against each other.

use crate::cover::{build_cover, public_sample_size, Cover, DEFAULT_COVER_C};
use crate::datagen::Example;
use crate::hypothesis::{
    point_free_spot, run_interval, single_run_cell, threshold_params_in_order, ConceptClass,
    Hypothesis, HypothesisError,
};
use crate::mechanism::{private_size_for, select_exp_mech, MechanismError};
use rand::Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error, PartialEq)]
pub enum LearnerError {
    #[error("private sample must be nonempty")]
    EmptyPrivateSample,
    #[error("labeled sample must be nonempty")]
    EmptySample,
    #[error("candidate set has {count} entries, beyond the materialization limit {limit}")]
    CandidateExplosion { count: u64, limit: u64 },
    #[error(transparent)]
    Mechanism(#[from] MechanismError),
    #[error(transparent)]
    Hypothesis(#[from] HypothesisError),
}

/// Materialization guard for classes without a streamed count path.
const MAX_MATERIALIZED: u64 = 2_000_000;

/// Planned sample sizes for learning `d`-dimensional classes to excess
/// error `alpha` at confidence `1 - beta` under privacy `epsilon`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SamplePlan {
    pub n_priv: u64,
    pub n_pub: u64,
    pub alpha: f64,
    pub beta: f64,
    pub epsilon: f64,
    pub d: usize,
}

/// Split the error and confidence budgets evenly between the cover and the
/// mechanism: the public size makes the cover an `alpha/2`-cover except with
/// probability `beta/2`, and the private size drives the mechanism's excess
/// below `alpha/2` at confidence `1 - beta/2`, with the cover cardinality
/// estimated through the growth function `(e n_pub / d)^d`.
pub fn plan_sizes(d: usize, alpha: f64, beta: f64, epsilon: f64) -> SamplePlan {
    assert!(d >= 1, "need d >= 1");
    assert!(alpha > 0.0 && alpha < 1.0, "need alpha in (0, 1)");
    assert!(beta > 0.0 && beta < 1.0, "need beta in (0, 1)");
    let n_pub = public_sample_size(d, alpha / 2.0, beta / 2.0, DEFAULT_COVER_C);
    let log_card = d as f64 * (std::f64::consts::E * n_pub as f64 / d as f64).ln();
    let n_priv = private_size_for(log_card, alpha / 2.0, beta / 2.0, epsilon);
    SamplePlan {
        n_priv,
        n_pub,
        alpha,
        beta,
        epsilon,
        d,
    }
}

/// Miss count of every cover entry on the sample, walking the materialized
/// cover one entry at a time. The reference path.
pub fn miss_counts_naive(cover: &Cover, sample: &[Example]) -> Vec<u64> {
    cover
        .hypotheses()
        .map(|h| sample.iter().filter(|e| h.predict(e.x) != e.y).count() as u64)
        .collect()
}

/// Miss count of every candidate representative on the sample, in the
/// class's projection order, without materializing the cover. Exact and
/// bit-identical to [`miss_counts_naive`] over `build_cover(class, points)`.
pub fn candidate_miss_counts(
    class: ConceptClass,
    points: &[f64],
    sample: &[Example],
) -> Result<Vec<u64>, LearnerError> {
    crate::hypothesis::validate_points(points)?;
    match class {
        ConceptClass::Thresholds => Ok(threshold_miss_counts(points, sample)),
        ConceptClass::Intervals => Ok(interval_miss_counts(points, sample)),
        ConceptClass::IntervalUnions { .. } => {
            let count = class.dichotomy_count(points.len());
            if count > MAX_MATERIALIZED {
                return Err(LearnerError::CandidateExplosion {
                    count,
                    limit: MAX_MATERIALIZED,
                });
            }
            let cover = build_cover(class, points)?;
            Ok(miss_counts_naive(&cover, sample))
        }
    }
}

/// Sorted sample with prefix counts of one-labels.
struct SortedSample {
    xs: Vec<f64>,
    ones_prefix: Vec<u64>,
    ones_total: u64,
}

impl SortedSample {
    fn new(sample: &[Example]) -> Self {
        let mut pairs: Vec<(f64, bool)> = sample.iter().map(|e| (e.x, e.y)).collect();
        pairs.sort_by(|a, b| a.0.total_cmp(&b.0));
        let mut ones_prefix = Vec::with_capacity(pairs.len() + 1);
        ones_prefix.push(0);
        let mut acc = 0u64;
        for &(_, y) in &pairs {
            acc += u64::from(y);
            ones_prefix.push(acc);
        }
        SortedSample {
            xs: pairs.into_iter().map(|(x, _)| x).collect(),
            ones_prefix,
            ones_total: acc,
        }
    }

    fn n(&self) -> u64 {
        self.xs.len() as u64
    }

    /// Number of examples with `x < v` and how many of them are ones.
    fn below(&self, v: f64) -> (u64, u64) {
        let idx = self.xs.partition_point(|&x| x < v);
        (idx as u64, self.ones_prefix[idx])
    }

    /// Number of examples with `x <= v` and how many of them are ones.
    fn at_or_below(&self, v: f64) -> (u64, u64) {
        let idx = self.xs.partition_point(|&x| x <= v);
        (idx as u64, self.ones_prefix[idx])
    }

    /// Misses of the closed interval `[lo, hi]` as the 1-region.
    fn interval_misses(&self, lo: f64, hi: f64) -> u64 {
        let (cnt_hi, ones_hi) = self.at_or_below(hi);
        let (cnt_lo, ones_lo) = self.below(lo);
        let inside = cnt_hi.saturating_sub(cnt_lo);
        let ones_inside = ones_hi - ones_lo;
        let zeros_inside = inside - ones_inside;
        (self.ones_total - ones_inside) + zeros_inside
    }
}

fn threshold_miss_counts(points: &[f64], sample: &[Example]) -> Vec<u64> {
    let sorted = SortedSample::new(sample);
    let ts = threshold_params_in_order(points);
    let zeros_total = sorted.n() - sorted.ones_total;
    // misses(t) = ones below t + zeros at or above t
    ts.iter()
        .map(|&t| {
            let (cnt_below, ones_below) = sorted.below(t);
            let zeros_below = cnt_below - ones_below;
            ones_below + (zeros_total - zeros_below)
        })
        .collect()
}

fn interval_miss_counts(points: &[f64], sample: &[Example]) -> Vec<u64> {
    let sorted = SortedSample::new(sample);
    let m = points.len();
    let total = ConceptClass::Intervals.dichotomy_count(m) as usize;
    let mut counts = Vec::with_capacity(total);
    let spot = point_free_spot(points);
    counts.push(sorted.interval_misses(spot, spot));
    if m == 0 {
        return counts;
    }
    // Run endpoints depend on one index each, so precompute both tables.
    let lo_of: Vec<f64> = (0..m).map(|i| run_interval(points, i, i)[0]).collect();
    let hi_of: Vec<f64> = (0..m).map(|j| run_interval(points, j, j)[1]).collect();
    let below_lo: Vec<(u64, u64)> = lo_of.iter().map(|&v| sorted.below(v)).collect();
    let at_or_below_hi: Vec<(u64, u64)> = hi_of.iter().map(|&v| sorted.at_or_below(v)).collect();
    for i in 0..m {
        let (cnt_lo, ones_lo) = below_lo[i];
        for j in i..m {
            let (cnt_hi, ones_hi) = at_or_below_hi[j];
            let inside = cnt_hi - cnt_lo;
            let ones_inside = ones_hi - ones_lo;
            let zeros_inside = inside - ones_inside;
            counts.push((sorted.ones_total - ones_inside) + zeros_inside);
        }
    }
    counts
}

/// The candidate hypothesis at `index` of the class's projection order over
/// `points`; identical to the corresponding cover entry's representative.
pub fn candidate_hypothesis(
    class: ConceptClass,
    points: &[f64],
    index: usize,
) -> Result<Hypothesis, LearnerError> {
    match class {
        ConceptClass::Thresholds => {
            let ts = threshold_params_in_order(points);
            Ok(Hypothesis::Threshold { t: ts[index] })
        }
        ConceptClass::Intervals => Ok(match single_run_cell(points.len(), index) {
            None => {
                let c = point_free_spot(points);
                Hypothesis::Interval { lo: c, hi: c }
            }
            Some((i, j)) => {
                let [lo, hi] = run_interval(points, i, j);
                Hypothesis::Interval { lo, hi }
            }
        }),
        ConceptClass::IntervalUnions { .. } => {
            let cover = build_cover(class, points)?;
            Ok(cover.entries[index].hypothesis.clone())
        }
    }
}

/// Everything a caller might want to record about one learner run.
#[derive(Debug, Clone, PartialEq)]
pub struct SsppOutcome {
    pub hypothesis: Hypothesis,
    /// Deduplicated, sorted public points the cover was built on.
    pub points: Vec<f64>,
    pub cover_size: u64,
    pub selected_index: usize,
}

/// The semi-private learner: build the cover from the public points, score
/// every representative by its exact miss count on the private sample, and
/// select one with the exponential mechanism at privacy `epsilon`.
pub fn sspp_learn(
    class: ConceptClass,
    private_sample: &[Example],
    public_points: &[f64],
    epsilon: f64,
    rng: &mut impl Rng,
) -> Result<Hypothesis, LearnerError> {
    Ok(sspp_learn_detailed(class, private_sample, public_points, epsilon, rng)?.hypothesis)
}

/// As [`sspp_learn`], returning the run details.
pub fn sspp_learn_detailed(
    class: ConceptClass,
    private_sample: &[Example],
    public_points: &[f64],
    epsilon: f64,
    rng: &mut impl Rng,
) -> Result<SsppOutcome, LearnerError> {
    if private_sample.is_empty() {
        return Err(LearnerError::EmptyPrivateSample);
    }
    let points = crate::cover::dedup_points(public_points)?;
    let counts = candidate_miss_counts(class, &points, private_sample)?;
    let outcome = select_exp_mech(&counts, private_sample.len() as u64, epsilon, rng)?;
    let hypothesis = candidate_hypothesis(class, &points, outcome.index)?;
    Ok(SsppOutcome {
        hypothesis,
        cover_size: counts.len() as u64,
        points,
        selected_index: outcome.index,
    })
}

/// Exact empirical-risk minimizer over the class, computed by sweeping the
/// candidate cells induced by the sample's own points. Ties go to the
/// first candidate in projection order, whose hypothesis is then placed by
/// the representative rule.
pub fn public_erm(
    class: ConceptClass,
    labeled_public: &[Example],
) -> Result<Hypothesis, LearnerError> {
    if labeled_public.is_empty() {
        return Err(LearnerError::EmptySample);
    }
    let xs: Vec<f64> = labeled_public.iter().map(|e| e.x).collect();
    let points = crate::cover::dedup_points(&xs)?;
    let counts = candidate_miss_counts(class, &points, labeled_public)?;
    let best = counts
        .iter()
        .enumerate()
        .min_by_key(|(_, &c)| c)
        .expect("candidate set is never empty")
        .0;
    candidate_hypothesis(class, &points, best)
}

/// Empirical error of the exact ERM (how well the class can fit a sample).
pub fn erm_training_error(
    class: ConceptClass,
    labeled_public: &[Example],
) -> Result<u64, LearnerError> {
    if labeled_public.is_empty() {
        return Err(LearnerError::EmptySample);
    }
    let xs: Vec<f64> = labeled_public.iter().map(|e| e.x).collect();
    let points = crate::cover::dedup_points(&xs)?;
    let counts = candidate_miss_counts(class, &points, labeled_public)?;
    Ok(*counts.iter().min().expect("candidate set is never empty"))
}
