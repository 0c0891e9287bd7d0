//! Differential-privacy audits over enumerable neighboring datasets.
//!
//! Two neighboring datasets differ in exactly one example (replacement, so
//! the sample size is fixed). For mechanisms whose outcome distribution is
//! exactly computable, [`exact_audit`] checks the defining inequality
//! outcome by outcome at machine precision. [`empirical_audit`] estimates
//! the same ratios from seeded draws with Clopper-Pearson bounds; it can
//! refute a privacy claim but never certifies one, and its verdict says so.

use crate::datagen::Example;
use crate::hypothesis::Hypothesis;
use crate::mechanism::exact_distribution;
use crate::rng::{SeedTree, Stream};
use serde::{Deserialize, Serialize};
use statrs::distribution::{Beta, ContinuousCDF};
use thiserror::Error;

#[derive(Debug, Error, PartialEq)]
pub enum AuditError {
    #[error("audit size guard: {0}")]
    TooLarge(String),
    #[error("sample point at index {0} is not one of the domain atoms")]
    SampleNotOnAtoms(usize),
    #[error("outcome spaces differ across neighbors: {expected} vs {got}")]
    MismatchedOutcomes { expected: usize, got: usize },
    #[error("{trials} trials cannot resolve log-ratios near {epsilon} at confidence {confidence}; need at least {needed}")]
    InsufficientTrials {
        trials: u64,
        epsilon: f64,
        confidence: f64,
        needed: u64,
    },
    #[error("invalid audit parameters: {0}")]
    BadParams(String),
}

/// A pair of datasets differing in exactly one position.
#[derive(Debug, Clone, PartialEq)]
pub struct NeighborPair {
    pub base: Vec<Example>,
    pub variant: Vec<Example>,
    pub changed_index: usize,
}

/// All replacement neighbors of `sample` over a finite point domain: at each
/// position, every `(atom, label)` combination other than the current one.
/// Yields exactly `n * (2 * |atoms| - 1)` pairs.
pub fn enumerate_neighbors(
    sample: &[Example],
    domain_atoms: &[f64],
) -> Result<Vec<NeighborPair>, AuditError> {
    if sample.len() > 8 {
        return Err(AuditError::TooLarge(format!(
            "sample size {} exceeds 8",
            sample.len()
        )));
    }
    if domain_atoms.len() > 8 || domain_atoms.is_empty() {
        return Err(AuditError::TooLarge(format!(
            "atom count {} outside 1..=8",
            domain_atoms.len()
        )));
    }
    for (i, e) in sample.iter().enumerate() {
        if !domain_atoms.contains(&e.x) {
            return Err(AuditError::SampleNotOnAtoms(i));
        }
    }
    let mut pairs = Vec::with_capacity(sample.len() * (2 * domain_atoms.len() - 1));
    for i in 0..sample.len() {
        for &x in domain_atoms {
            for y in [false, true] {
                let replacement = Example { x, y };
                if replacement == sample[i] {
                    continue;
                }
                let mut variant = sample.to_vec();
                variant[i] = replacement;
                pairs.push(NeighborPair {
                    base: sample.to_vec(),
                    variant,
                    changed_index: i,
                });
            }
        }
    }
    Ok(pairs)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "method", rename_all = "snake_case")]
pub enum AuditMethod {
    Exact,
    Empirical { trials: u64, confidence: f64 },
}

/// What an audit is allowed to conclude. Empirical audits are
/// refutation-only: they never certify privacy.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "verdict", rename_all = "snake_case")]
pub enum AuditVerdict {
    Certified { pass: bool },
    RefutationOnly { refuted: bool },
}

impl AuditVerdict {
    pub fn passed(&self) -> bool {
        matches!(self, AuditVerdict::Certified { pass: true })
    }

    pub fn refuted(&self) -> bool {
        matches!(
            self,
            AuditVerdict::Certified { pass: false } | AuditVerdict::RefutationOnly { refuted: true }
        )
    }
}

/// Slack for float comparisons against the target epsilon.
pub const EXACT_AUDIT_SLACK: f64 = 1e-9;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AuditReport {
    pub epsilon_target: f64,
    pub method: AuditMethod,
    pub verdict: AuditVerdict,
    pub pairs_audited: usize,
    /// Exact method: the exact worst `|log ratio|` over pairs and outcomes.
    /// Empirical method: a one-sided upper confidence bound on it, over the
    /// outcomes that were resolvable.
    pub max_log_ratio: f64,
    /// A certified lower bound on the worst ratio (equals `max_log_ratio`
    /// for the exact method); this is what an empirical refutation rests on.
    pub max_log_ratio_lower: f64,
    /// Worst value per outcome index, same semantics as `max_log_ratio`.
    pub per_outcome: Vec<f64>,
    /// Outcomes excluded from the bound: probability zero on both sides
    /// (exact) or observed on at most one side (empirical).
    pub skipped_outcomes: Vec<usize>,
}

/// Exact audit: `mechanism` maps a dataset to its full outcome distribution
/// over a fixed finite outcome space. Passes iff every log-ratio is at most
/// `epsilon + 1e-9`. A zero-against-nonzero outcome is an infinite ratio and
/// fails; zero-against-zero outcomes are skipped and flagged.
pub fn exact_audit<F>(
    mechanism: F,
    pairs: &[NeighborPair],
    epsilon: f64,
) -> Result<AuditReport, AuditError>
where
    F: Fn(&[Example]) -> Vec<f64>,
{
    if pairs.is_empty() {
        return Err(AuditError::BadParams("no neighbor pairs".into()));
    }
    let n_outcomes = mechanism(&pairs[0].base).len();
    let mut per_outcome = vec![0.0f64; n_outcomes];
    let mut skipped = vec![false; n_outcomes];
    for pair in pairs {
        let p = mechanism(&pair.base);
        let q = mechanism(&pair.variant);
        if p.len() != n_outcomes || q.len() != n_outcomes {
            return Err(AuditError::MismatchedOutcomes {
                expected: n_outcomes,
                got: p.len().max(q.len()),
            });
        }
        for o in 0..n_outcomes {
            match (p[o] > 0.0, q[o] > 0.0) {
                (false, false) => skipped[o] = true,
                (true, true) => {
                    let r = (p[o].ln() - q[o].ln()).abs();
                    per_outcome[o] = per_outcome[o].max(r);
                }
                _ => per_outcome[o] = f64::INFINITY,
            }
        }
    }
    let max_log_ratio = per_outcome.iter().copied().fold(0.0, f64::max);
    Ok(AuditReport {
        epsilon_target: epsilon,
        method: AuditMethod::Exact,
        verdict: AuditVerdict::Certified {
            pass: max_log_ratio <= epsilon + EXACT_AUDIT_SLACK,
        },
        pairs_audited: pairs.len(),
        max_log_ratio,
        max_log_ratio_lower: max_log_ratio,
        per_outcome,
        skipped_outcomes: flagged(&skipped),
    })
}

/// Frequency-based audit of a mechanism sampler over a fixed outcome space
/// of size `n_outcomes`. Reports Clopper-Pearson style confidence bounds on
/// the worst log-ratio; the verdict is refutation-only. Outcomes observed on
/// at most one side of a pair cannot be upper-bounded and are flagged.
pub fn empirical_audit<S>(
    mut sampler: S,
    n_outcomes: usize,
    pairs: &[NeighborPair],
    epsilon: f64,
    trials: u64,
    confidence: f64,
    seed: &SeedTree,
) -> Result<AuditReport, AuditError>
where
    S: FnMut(&[Example], &mut Stream) -> usize,
{
    if pairs.is_empty() || n_outcomes == 0 {
        return Err(AuditError::BadParams("no pairs or empty outcome space".into()));
    }
    if !(0.5..1.0).contains(&confidence) {
        return Err(AuditError::BadParams(format!(
            "confidence must be in [0.5, 1), got {confidence}"
        )));
    }
    // A Hoeffding-width proxy for the Clopper-Pearson interval: ratios near
    // e^epsilon are unresolvable once the interval half-width swamps the
    // probability scale being compared.
    let scale = (1.0 - (-epsilon).exp()) / 4.0;
    let needed = ((2.0 / (1.0 - confidence)).ln() / (2.0 * scale * scale)).ceil() as u64;
    if trials < needed {
        return Err(AuditError::InsufficientTrials {
            trials,
            epsilon,
            confidence,
            needed,
        });
    }

    let mut per_outcome = vec![0.0f64; n_outcomes];
    let mut lower_bound = 0.0f64;
    let mut unresolved = vec![false; n_outcomes];
    for (pi, pair) in pairs.iter().enumerate() {
        let node = seed.child("empirical-audit").indexed(pi as u64);
        let base_counts = tally(&mut sampler, &pair.base, n_outcomes, trials, &mut node.stream_for("base"));
        let var_counts = tally(&mut sampler, &pair.variant, n_outcomes, trials, &mut node.stream_for("variant"));
        for o in 0..n_outcomes {
            let (kb, kv) = (base_counts[o], var_counts[o]);
            if kb == 0 && kv == 0 {
                unresolved[o] = true;
                continue;
            }
            if kb == 0 || kv == 0 {
                // one-sided: contributes to refutation bounds only
                unresolved[o] = true;
            } else {
                let ub = (cp_upper(kb, trials, confidence) / cp_lower(kv, trials, confidence))
                    .ln()
                    .max((cp_upper(kv, trials, confidence) / cp_lower(kb, trials, confidence)).ln());
                per_outcome[o] = per_outcome[o].max(ub);
            }
            let lb = certified_ratio_lower(kb, kv, trials, confidence);
            lower_bound = lower_bound.max(lb);
        }
    }
    let max_log_ratio = per_outcome.iter().copied().fold(0.0, f64::max);
    Ok(AuditReport {
        epsilon_target: epsilon,
        method: AuditMethod::Empirical { trials, confidence },
        verdict: AuditVerdict::RefutationOnly {
            refuted: lower_bound > epsilon + EXACT_AUDIT_SLACK,
        },
        pairs_audited: pairs.len(),
        max_log_ratio,
        max_log_ratio_lower: lower_bound,
        per_outcome,
        skipped_outcomes: flagged(&unresolved),
    })
}

fn tally<S>(
    sampler: &mut S,
    sample: &[Example],
    n_outcomes: usize,
    trials: u64,
    rng: &mut Stream,
) -> Vec<u64>
where
    S: FnMut(&[Example], &mut Stream) -> usize,
{
    let mut counts = vec![0u64; n_outcomes];
    for _ in 0..trials {
        let o = sampler(sample, rng);
        counts[o.min(n_outcomes - 1)] += 1;
    }
    counts
}

/// Largest log-ratio certifiably exceeded at the given confidence.
fn certified_ratio_lower(kb: u64, kv: u64, trials: u64, confidence: f64) -> f64 {
    let dir = |hi: u64, lo: u64| -> f64 {
        let num = cp_lower(hi, trials, confidence);
        let den = cp_upper(lo, trials, confidence);
        if num <= 0.0 {
            return 0.0;
        }
        (num / den).ln().max(0.0)
    };
    dir(kb, kv).max(dir(kv, kb))
}

fn flagged(mask: &[bool]) -> Vec<usize> {
    mask.iter()
        .enumerate()
        .filter_map(|(i, &f)| f.then_some(i))
        .collect()
}

/// Clopper-Pearson one-sided lower bound on a binomial proportion.
fn cp_lower(k: u64, n: u64, confidence: f64) -> f64 {
    if k == 0 {
        return 0.0;
    }
    Beta::new(k as f64, (n - k + 1) as f64)
        .expect("valid beta parameters")
        .inverse_cdf(1.0 - confidence)
}

/// Clopper-Pearson one-sided upper bound on a binomial proportion.
fn cp_upper(k: u64, n: u64, confidence: f64) -> f64 {
    if k == n {
        return 1.0;
    }
    Beta::new((k + 1) as f64, (n - k) as f64)
        .expect("valid beta parameters")
        .inverse_cdf(confidence)
}

/// The exponential mechanism over fixed candidate hypotheses, packaged as an
/// exactly computable mechanism: dataset in, outcome distribution out.
pub fn exp_mech_distribution(
    candidates: &[Hypothesis],
    epsilon: f64,
    sample: &[Example],
) -> Vec<f64> {
    let counts: Vec<u64> = candidates
        .iter()
        .map(|h| sample.iter().filter(|e| h.predict(e.x) != e.y).count() as u64)
        .collect();
    exact_distribution(&counts, sample.len() as u64, epsilon).expect("valid mechanism instance")
}
