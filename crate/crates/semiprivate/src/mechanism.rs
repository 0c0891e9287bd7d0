//! The exponential mechanism over a finite candidate set.
//!
//! The utility of candidate `i` is the negated integer miss count of that
//! candidate on the private sample. Replacing one example changes each count
//! by at most 1, so the utility has sensitivity 1 and selecting with
//! probability proportional to `exp(-epsilon * count / 2)` is
//! `epsilon`-differentially private.
//!
//! All probability arithmetic happens in log space. The sampler and the
//! exact-distribution oracle share one code path up to the final inverse-CDF
//! draw, so frequency tests against [`exact_distribution`] exercise the real
//! selection probabilities.

use rand::Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error, PartialEq)]
pub enum MechanismError {
    #[error("candidate list is empty")]
    EmptyCandidates,
    #[error("miss count {count} at index {index} exceeds sample size {n}")]
    CountOutOfRange { index: usize, count: u64, n: u64 },
    #[error("epsilon must be positive and finite, got {0}")]
    BadEpsilon(f64),
}

/// Differential-privacy parameters. The mechanisms built here are pure DP:
/// `delta` is carried only so callers can state their targets.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DpParams {
    pub epsilon: f64,
    pub delta: f64,
}

impl DpParams {
    pub fn pure(epsilon: f64) -> Self {
        DpParams { epsilon, delta: 0.0 }
    }

    pub fn validate(&self) -> Result<(), MechanismError> {
        if !(self.epsilon.is_finite() && self.epsilon > 0.0) {
            return Err(MechanismError::BadEpsilon(self.epsilon));
        }
        if !(0.0..1.0).contains(&self.delta) {
            return Err(MechanismError::BadEpsilon(self.delta));
        }
        Ok(())
    }
}

/// Result of one exponential-mechanism draw: the selected candidate and the
/// exact log-probabilities that were in force at selection time.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SelectionOutcome {
    pub index: usize,
    pub log_probabilities: Vec<f64>,
}

fn validate(miss_counts: &[u64], n: u64, epsilon: f64) -> Result<(), MechanismError> {
    if miss_counts.is_empty() {
        return Err(MechanismError::EmptyCandidates);
    }
    if !(epsilon.is_finite() && epsilon > 0.0) {
        return Err(MechanismError::BadEpsilon(epsilon));
    }
    if let Some((index, &count)) = miss_counts.iter().enumerate().find(|(_, &c)| c > n) {
        return Err(MechanismError::CountOutOfRange { index, count, n });
    }
    Ok(())
}

/// Normalized log-probabilities `-epsilon * c_i / 2 - log Z`, computed with
/// max-shift so extreme counts only underflow, never overflow.
pub fn exact_log_distribution(
    miss_counts: &[u64],
    n: u64,
    epsilon: f64,
) -> Result<Vec<f64>, MechanismError> {
    validate(miss_counts, n, epsilon)?;
    let min_count = *miss_counts.iter().min().expect("nonempty");
    // Shifting all counts by a constant leaves the distribution unchanged;
    // shifting by the minimum makes the largest logit exactly 0.
    let logits: Vec<f64> = miss_counts
        .iter()
        .map(|&c| -0.5 * epsilon * (c - min_count) as f64)
        .collect();
    let z: f64 = logits.iter().map(|l| l.exp()).sum();
    let log_z = z.ln();
    Ok(logits.into_iter().map(|l| l - log_z).collect())
}

/// The exact selection distribution `exp(-eps*c_i/2) / sum_j exp(-eps*c_j/2)`.
pub fn exact_distribution(
    miss_counts: &[u64],
    n: u64,
    epsilon: f64,
) -> Result<Vec<f64>, MechanismError> {
    Ok(exact_log_distribution(miss_counts, n, epsilon)?
        .into_iter()
        .map(f64::exp)
        .collect())
}

/// Draw one candidate with probability proportional to
/// `exp(-epsilon * miss_counts[i] / 2)`, by inverse CDF over the exact
/// distribution.
pub fn select_exp_mech(
    miss_counts: &[u64],
    n: u64,
    epsilon: f64,
    rng: &mut impl Rng,
) -> Result<SelectionOutcome, MechanismError> {
    let log_probabilities = exact_log_distribution(miss_counts, n, epsilon)?;
    let u: f64 = rng.random();
    let mut acc = 0.0;
    let mut index = log_probabilities.len() - 1;
    for (i, lp) in log_probabilities.iter().enumerate() {
        acc += lp.exp();
        if u < acc {
            index = i;
            break;
        }
    }
    Ok(SelectionOutcome {
        index,
        log_probabilities,
    })
}

/// Constant in the generic-learner sample bound used by this crate.
pub const UTILITY_C: f64 = 4.0;

/// Guaranteed excess empirical score of the selected candidate over the best
/// of `card` candidates, at confidence `1 - beta`, for a private sample of
/// size `n`: the `alpha` solving
/// `n = C * (ln card + ln(1/beta)) * max(1/alpha^2, 1/(epsilon*alpha))`.
///
/// Caller contract: `card >= 1`, `n >= 1`, `epsilon > 0`, `beta` in (0, 1).
pub fn utility_bound(card: u64, n: u64, epsilon: f64, beta: f64) -> f64 {
    assert!(card >= 1 && n >= 1, "need card >= 1 and n >= 1");
    assert!(epsilon > 0.0 && epsilon.is_finite(), "need epsilon > 0");
    assert!((0.0..1.0).contains(&beta) && beta > 0.0, "need beta in (0, 1)");
    let budget = UTILITY_C * ((card as f64).ln() + (1.0 / beta).ln());
    let n = n as f64;
    // The two regimes cross at alpha = epsilon; the max picks the binding one.
    (budget / n).sqrt().max(budget / (epsilon * n))
}

/// Inverse of [`utility_bound`]: the smallest private sample size whose
/// guaranteed excess is at most `alpha`, given `ln card` (which may be a
/// Sauer-style estimate rather than an exact cardinality).
pub fn private_size_for(log_card: f64, alpha: f64, beta: f64, epsilon: f64) -> u64 {
    assert!(log_card >= 0.0, "need log_card >= 0");
    assert!(alpha > 0.0 && alpha < 1.0, "need alpha in (0, 1)");
    assert!(beta > 0.0 && beta < 1.0, "need beta in (0, 1)");
    assert!(epsilon > 0.0 && epsilon.is_finite(), "need epsilon > 0");
    let budget = UTILITY_C * (log_card + (1.0 / beta).ln());
    let n = budget * (1.0 / (alpha * alpha)).max(1.0 / (epsilon * alpha));
    (n.ceil() as u64).max(1)
}
