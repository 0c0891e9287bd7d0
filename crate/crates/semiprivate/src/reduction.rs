//! The public-data reduction: wrapping a semi-private learner into a fully
//! private learner for realizable distributions.
//!
//! The wrapped learner `A` expects `n_priv` private and `n_pub` public
//! examples. The wrapper `B` owns only a small real sample of size
//! `ceil(n_priv / (10 n_pub))`. It dilutes the real examples into a stream
//! of dummy draws (`PrivSamp`): each of the `n_priv` private slots takes the
//! next unused real example with probability `p = 1 / (100 n_pub)` and a
//! fresh dummy draw otherwise. The public input handed to `A` is pure dummy
//! data (`PubSamp`). Privacy transfers because every real example occupies
//! at most one private slot and the public input is real-data-free; accuracy
//! transfers because the private slots are distributed i.i.d. from the
//! mixture `p * D + (1 - p) * D0` on the (overwhelmingly likely) event that
//! the real sample is not exhausted early.
//!
//! When the real sample does run out before all slots are filled, the
//! remaining slots are padded with dummy draws and the run is flagged
//! `completed = false`. Padding keeps privacy intact (still at most one slot
//! per real example); accuracy statements condition on completion.

use crate::datagen::{DataDistribution, Example};
use crate::hypothesis::Hypothesis;
use crate::learner::LearnerError;
use crate::rng::{SeedTree, Stream};
use rand::Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error, PartialEq)]
pub enum ReductionError {
    #[error("invalid reduction configuration: {0}")]
    BadConfig(String),
    #[error("real sample has {got} examples, the configuration requires {want}")]
    WrongRealSize { got: usize, want: u64 },
    #[error(transparent)]
    Learner(#[from] LearnerError),
}

/// Sizes of the wrapped learner plus the derived dilution parameters.
/// `p` and `tilde_n` are always derived from `(n_priv, n_pub)`, never set
/// independently.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ReductionConfig {
    n_priv: u64,
    n_pub: u64,
    p: f64,
    tilde_n: u64,
}

impl ReductionConfig {
    pub fn new(n_priv: u64, n_pub: u64) -> Result<Self, ReductionError> {
        if n_priv == 0 || n_pub == 0 {
            return Err(ReductionError::BadConfig(
                "need n_priv >= 1 and n_pub >= 1".into(),
            ));
        }
        let p = 1.0 / (100.0 * n_pub as f64);
        let tilde_n = n_priv.div_ceil(10 * n_pub);
        Ok(ReductionConfig {
            n_priv,
            n_pub,
            p,
            tilde_n,
        })
    }

    pub fn n_priv(&self) -> u64 {
        self.n_priv
    }

    pub fn n_pub(&self) -> u64 {
        self.n_pub
    }

    /// Probability that a private slot consumes a real example.
    pub fn p(&self) -> f64 {
        self.p
    }

    /// Real sample size the wrapper needs.
    pub fn tilde_n(&self) -> u64 {
        self.tilde_n
    }
}

/// Output of the private sample generator.
#[derive(Debug, Clone, PartialEq)]
pub struct PrivSampResult {
    /// Always exactly `n_priv` examples (padded with dummies if needed).
    pub sample: Vec<Example>,
    /// True when every slot was decided by its own coin, i.e. the real
    /// sample never ran out before the last slot was filled.
    pub completed: bool,
    /// Slot indices holding real examples, in consumption order.
    pub real_positions: Vec<usize>,
}

/// Fill `n_priv` slots: slot `i` takes the next unused real example when its
/// `Bernoulli(p)` coin lands 1 and any remain, otherwise a fresh dummy draw.
/// Real examples are consumed in order and used at most once. Slots past an
/// early exhaustion are dummy-padded and the result is marked incomplete.
pub fn priv_samp(
    real_sample: &[Example],
    dummy: &DataDistribution,
    p: f64,
    n_priv: usize,
    rng: &mut impl Rng,
) -> PrivSampResult {
    let mut sample = Vec::with_capacity(n_priv);
    let mut real_positions = Vec::new();
    let mut consumed = 0usize;
    let mut completed = true;
    for i in 0..n_priv {
        if consumed == real_sample.len() {
            completed = false;
            sample.push(dummy.sample_one(rng));
            continue;
        }
        if rng.random::<f64>() < p {
            sample.push(real_sample[consumed]);
            real_positions.push(i);
            consumed += 1;
        } else {
            sample.push(dummy.sample_one(rng));
        }
    }
    PrivSampResult {
        sample,
        completed,
        real_positions,
    }
}

/// `n_pub` fresh dummy draws; contains no real example by construction.
pub fn pub_samp(dummy: &DataDistribution, n_pub: usize, rng: &mut impl Rng) -> Vec<Example> {
    dummy.sample_labeled(n_pub, rng)
}

/// What one wrapper run produced. The generated samples are dropped (they
/// can be tens of millions of examples); diagnostics are kept.
#[derive(Debug, Clone, PartialEq)]
pub struct ReductionRun {
    pub hypothesis: Hypothesis,
    pub completed: bool,
    pub real_used: u64,
}

/// The wrapper `B`: generate `S_priv` with [`priv_samp`] and `S_pub` with
/// [`pub_samp`], then run the wrapped learner on them.
///
/// `learner` receives `(s_priv, s_pub, rng)` where `s_pub` is labeled dummy
/// data; a semi-supervised learner simply ignores the labels. The three
/// stages draw from independent named streams under `seed`, so PrivSamp and
/// PubSamp dummies are mutually independent and never memoized.
pub fn reduce_to_private<L>(
    learner: L,
    real_sample: &[Example],
    dummy: &DataDistribution,
    config: &ReductionConfig,
    seed: &SeedTree,
) -> Result<ReductionRun, ReductionError>
where
    L: FnOnce(&[Example], &[Example], &mut Stream) -> Result<Hypothesis, LearnerError>,
{
    if real_sample.len() as u64 != config.tilde_n {
        return Err(ReductionError::WrongRealSize {
            got: real_sample.len(),
            want: config.tilde_n,
        });
    }
    let mut priv_rng = seed.stream_for("privsamp");
    let priv_result = priv_samp(
        real_sample,
        dummy,
        config.p,
        config.n_priv as usize,
        &mut priv_rng,
    );
    let mut pub_rng = seed.stream_for("pubsamp");
    let s_pub = pub_samp(dummy, config.n_pub as usize, &mut pub_rng);
    let mut learn_rng = seed.stream_for("learner");
    let hypothesis = learner(&priv_result.sample, &s_pub, &mut learn_rng)?;
    Ok(ReductionRun {
        hypothesis,
        completed: priv_result.completed,
        real_used: priv_result.real_positions.len() as u64,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::datagen::{Labeling, Marginal};
    use crate::rng::SeedTree;

    fn real(n: usize) -> Vec<Example> {
        (0..n)
            .map(|i| Example {
                x: (i as f64 + 0.5) / (n as f64 + 1.0),
                y: true,
            })
            .collect()
    }

    #[test]
    fn config_derives_parameters() {
        let cfg = ReductionConfig::new(1000, 4).unwrap();
        assert_eq!(cfg.p(), 1.0 / 400.0);
        assert_eq!(cfg.tilde_n(), 25);
        let cfg = ReductionConfig::new(101, 10).unwrap();
        assert_eq!(cfg.tilde_n(), 2); // ceil(101/100)
        assert!(ReductionConfig::new(0, 3).is_err());
    }

    #[test]
    fn single_use_and_order_preserving() {
        let dummy = DataDistribution::dummy_uniform();
        for seed in 0..20 {
            let mut rng = SeedTree::new(seed).stream_for("ps");
            let reals = real(30);
            let out = priv_samp(&reals, &dummy, 0.3, 80, &mut rng);
            // distinct, increasing positions
            assert!(out.real_positions.windows(2).all(|w| w[0] < w[1]));
            // placed examples are exactly a prefix of the real sample, in order
            for (k, &pos) in out.real_positions.iter().enumerate() {
                assert_eq!(out.sample[pos], reals[k]);
            }
            assert_eq!(out.sample.len(), 80);
            assert!(out.real_positions.len() <= reals.len());
        }
    }

    #[test]
    fn tiny_p_keeps_everything_dummy() {
        let dummy = DataDistribution::dummy_uniform();
        let mut rng = SeedTree::new(7).stream_for("ps");
        let out = priv_samp(&real(1), &dummy, 1e-9, 10_000, &mut rng);
        assert!(out.completed);
        assert!(out.real_positions.is_empty());
    }

    #[test]
    fn p_one_consumes_immediately_then_pads() {
        let dummy = DataDistribution::dummy_uniform();
        let mut rng = SeedTree::new(7).stream_for("ps");
        let reals = real(1);
        let out = priv_samp(&reals, &dummy, 1.0, 5, &mut rng);
        assert_eq!(out.real_positions, vec![0]);
        assert_eq!(out.sample[0], reals[0]);
        assert!(!out.completed); // exhausted before slot 5
        assert_eq!(out.sample.len(), 5);
    }

    #[test]
    fn exhaustion_at_final_slot_counts_as_completed() {
        let dummy = DataDistribution::dummy_uniform();
        // p = 1 with exactly as many reals as slots: every slot is real and
        // the loop never pads.
        let mut rng = SeedTree::new(3).stream_for("ps");
        let out = priv_samp(&real(5), &dummy, 1.0, 5, &mut rng);
        assert!(out.completed);
        assert_eq!(out.real_positions, vec![0, 1, 2, 3, 4]);
    }

    #[test]
    fn completion_rate_matches_chernoff_regime() {
        // tilde_n = 10 p n_priv: exhaustion needs 10x the expected draws
        let cfg = ReductionConfig::new(10_000, 2).unwrap();
        let dummy = DataDistribution::dummy_uniform();
        let reals = real(cfg.tilde_n() as usize);
        let trials = 2_000;
        let completed = (0..trials)
            .filter(|&t| {
                let mut rng = SeedTree::new(900).child("ps").indexed(t).stream();
                priv_samp(&reals, &dummy, cfg.p(), cfg.n_priv() as usize, &mut rng).completed
            })
            .count();
        assert!(
            completed as f64 / trials as f64 >= 0.99,
            "completion rate {completed}/{trials}"
        );
    }

    #[test]
    fn pub_samp_has_no_real_points() {
        let dummy = DataDistribution {
            marginal: Marginal::Uniform,
            labeling: Labeling::UniformRandom,
        };
        let reals = real(50);
        let mut rng = SeedTree::new(4).stream_for("pub");
        let s = pub_samp(&dummy, 500, &mut rng);
        assert_eq!(s.len(), 500);
        for e in &s {
            assert!(reals.iter().all(|r| r.x != e.x));
        }
    }

    #[test]
    fn constant_learner_passes_through() {
        let cfg = ReductionConfig::new(200, 2).unwrap();
        let dummy = DataDistribution::dummy_uniform();
        let reals = real(cfg.tilde_n() as usize);
        let h0 = Hypothesis::threshold(0.42);
        let want = h0.clone();
        let run = reduce_to_private(
            move |_, _, _| Ok(h0),
            &reals,
            &dummy,
            &cfg,
            &SeedTree::new(1),
        )
        .unwrap();
        assert_eq!(run.hypothesis, want);
    }

    #[test]
    fn wrong_real_size_rejected() {
        let cfg = ReductionConfig::new(200, 2).unwrap();
        let dummy = DataDistribution::dummy_uniform();
        let err = reduce_to_private(
            |_, _, _| Ok(Hypothesis::threshold(0.0)),
            &real(3),
            &dummy,
            &cfg,
            &SeedTree::new(1),
        )
        .unwrap_err();
        assert_eq!(
            err,
            ReductionError::WrongRealSize {
                got: 3,
                want: cfg.tilde_n()
            }
        );
    }

    #[test]
    fn public_closeness_is_exact_bernoulli() {
        // 1 - (1 - 1/(100 n))^n <= 0.01 for every n
        for n in 1..=1000u32 {
            let p = 1.0 / (100.0 * f64::from(n));
            let hit = 1.0 - (1.0 - p).powi(n as i32);
            assert!(hit <= 0.01 + 1e-12, "n={n}: {hit}");
        }
    }
}
