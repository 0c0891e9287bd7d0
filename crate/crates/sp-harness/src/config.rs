//! Versioned experiment configuration.
//!
//! A config file is a single JSON document with a `schema_version`, a root
//! `seed`, a `trials` count, and a tagged `kind` selecting the experiment.
//! CLI flags may override the seed and trial count. Configs round-trip
//! through serde losslessly, which the determinism tests rely on.

use semiprivate::datagen::{DataDistribution, Labeling, Marginal};
use semiprivate::hypothesis::{ConceptClass, Hypothesis};
use semiprivate::rng::Stream;
use serde::{Deserialize, Serialize};

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExperimentConfig {
    pub schema_version: u32,
    pub seed: u64,
    pub trials: u64,
    #[serde(flatten)]
    pub spec: ExperimentSpec,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum ExperimentSpec {
    CoverRate(CoverRateSpec),
    LearnCurve(LearnCurveSpec),
    Scaling(ScalingSpec),
    Reduction(ReductionSpec),
    Audit(AuditSpec),
}

impl ExperimentSpec {
    pub fn kind_name(&self) -> &'static str {
        match self {
            ExperimentSpec::CoverRate(_) => "cover-rate",
            ExperimentSpec::LearnCurve(_) => "learn-curve",
            ExperimentSpec::Scaling(_) => "scaling",
            ExperimentSpec::Reduction(_) => "reduction",
            ExperimentSpec::Audit(_) => "audit",
        }
    }
}

/// How each trial picks the target hypothesis: pinned in the config, or
/// drawn per trial from the seeded target stream.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "target", rename_all = "snake_case")]
pub enum TargetSpec {
    Fixed { hypothesis: Hypothesis },
    Random,
}

impl TargetSpec {
    pub fn draw(&self, class: ConceptClass, rng: &mut Stream) -> Hypothesis {
        use rand::Rng;
        match self {
            TargetSpec::Fixed { hypothesis } => hypothesis.clone(),
            TargetSpec::Random => match class {
                ConceptClass::Thresholds => {
                    Hypothesis::threshold(rng.random_range(0.05..0.95))
                }
                ConceptClass::Intervals => {
                    let lo = rng.random_range(0.05..0.55);
                    let len = rng.random_range(0.2..0.4);
                    Hypothesis::interval(lo, (lo + len).min(0.95))
                }
                ConceptClass::IntervalUnions { k } => {
                    // k short intervals on an evenly split domain
                    let parts = (0..k)
                        .map(|i| {
                            let cell = 1.0 / k as f64;
                            let lo = cell * i as f64 + rng.random_range(0.05..0.4) * cell;
                            let hi = lo + rng.random_range(0.2..0.4) * cell;
                            [lo, hi]
                        })
                        .collect();
                    Hypothesis::union(parts)
                }
            },
        }
    }
}

/// Data model shared by the learning experiments: a marginal, a target
/// spec, and an optional label-flip rate (absent means realizable).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DataSpec {
    pub marginal: Marginal,
    #[serde(flatten)]
    pub target: TargetSpec,
    pub eta: Option<f64>,
}

impl DataSpec {
    pub fn uniform_random_target(eta: Option<f64>) -> Self {
        DataSpec {
            marginal: Marginal::Uniform,
            target: TargetSpec::Random,
            eta,
        }
    }

    /// Instantiate the distribution for one trial.
    pub fn instantiate(&self, class: ConceptClass, rng: &mut Stream) -> DataDistribution {
        let target = self.target.draw(class, rng);
        let labeling = match self.eta {
            None => Labeling::Realizable { target },
            Some(eta) => Labeling::Noisy { target, eta },
        };
        DataDistribution {
            marginal: self.marginal.clone(),
            labeling,
        }
    }

    pub fn validate(&self) -> Result<(), String> {
        self.marginal.validate().map_err(|e| e.to_string())?;
        if let Some(eta) = self.eta {
            if !(0.0..0.5).contains(&eta) {
                return Err(format!("eta must lie in [0, 1/2), got {eta}"));
            }
        }
        if let TargetSpec::Fixed { hypothesis } = &self.target {
            hypothesis.validate().map_err(|e| e.to_string())?;
        }
        Ok(())
    }
}

/// Cover construction failure rate versus the analytic bound.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CoverRateSpec {
    pub class: ConceptClass,
    pub marginal: Marginal,
    pub alphas: Vec<f64>,
    pub betas: Vec<f64>,
}

/// Excess-error distribution of the semi-private learner (and the labeled
/// public ERM baseline) at planned sizes.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LearnCurveSpec {
    pub class: ConceptClass,
    #[serde(flatten)]
    pub data: DataSpec,
    pub alphas: Vec<f64>,
    pub beta: f64,
    pub epsilon: f64,
    /// Also run the ERM baseline on `n_pub` labeled examples per trial.
    pub erm_arm: bool,
}

/// Empirically required public size versus alpha, with the planned-size
/// learner and the labeled-ERM contrast arms.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ScalingSpec {
    pub class: ConceptClass,
    #[serde(flatten)]
    pub data: DataSpec,
    pub alphas: Vec<f64>,
    pub beta: f64,
    pub epsilon: f64,
    /// A probe passes when at least this fraction of its trials reach
    /// excess error at most alpha.
    pub success_fraction: f64,
    /// Label-flip rate for the ERM contrast arm.
    pub erm_eta: f64,
}

/// The public-data reduction experiment.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ReductionSpec {
    pub class: ConceptClass,
    #[serde(flatten)]
    pub data: DataSpec,
    /// Excess-error target handed to the wrapped learner.
    pub alpha: f64,
    /// Public sample size handed to the wrapped learner.
    pub n_pub: u64,
    pub epsilon: f64,
    /// Confidence at which the wrapped learner is invoked.
    pub learner_beta: f64,
    /// Completion-rate sub-experiment: number of PrivSamp runs and the
    /// (desk-scale) n_priv they use, keeping the pinned dilution relation.
    pub completion_runs: u64,
    pub completion_n_priv: u64,
    /// Monte Carlo draws for the per-trial mixture-identity residual.
    pub mixture_draws: u64,
}

/// Exact DP audits of the selection mechanism and of the full learner with
/// a fixed public input; optionally an advisory empirical audit.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AuditSpec {
    pub epsilons: Vec<f64>,
    /// Finite point domain the audited samples live on (at most 8 atoms).
    pub atoms: Vec<f64>,
    /// Audited sample size (at most 8... the exact audit enumerates all
    /// replacement neighbors of each base sample).
    pub n: usize,
    /// Number of seeded base samples per epsilon.
    pub base_samples: u64,
    /// Candidate thresholds for the bare-mechanism audit (at most 8).
    pub n_candidates: usize,
    /// Public points defining the fixed-cover pipeline audit.
    pub public_points: Vec<f64>,
    /// When set, also run the refutation-only empirical audit with this
    /// many draws per neighbor side.
    pub empirical_trials: Option<u64>,
}

impl ExperimentConfig {
    pub fn from_json(text: &str) -> Result<Self, String> {
        let cfg: ExperimentConfig =
            serde_json::from_str(text).map_err(|e| format!("config parse error: {e}"))?;
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn validate(&self) -> Result<(), String> {
        if self.schema_version != SCHEMA_VERSION {
            return Err(format!(
                "unsupported schema_version {} (expected {SCHEMA_VERSION})",
                self.schema_version
            ));
        }
        if self.trials == 0 {
            return Err("trials must be at least 1".into());
        }
        let grid_ok = |name: &str, grid: &[f64]| -> Result<(), String> {
            if grid.is_empty() {
                return Err(format!("{name} grid must be nonempty"));
            }
            if grid.iter().any(|v| !(*v > 0.0 && *v < 1.0)) {
                return Err(format!("{name} values must lie in (0, 1)"));
            }
            Ok(())
        };
        match &self.spec {
            ExperimentSpec::CoverRate(s) => {
                s.marginal.validate().map_err(|e| e.to_string())?;
                grid_ok("alpha", &s.alphas)?;
                grid_ok("beta", &s.betas)?;
            }
            ExperimentSpec::LearnCurve(s) => {
                s.data.validate()?;
                grid_ok("alpha", &s.alphas)?;
                grid_ok("beta", &[s.beta])?;
                if s.epsilon <= 0.0 {
                    return Err("epsilon must be positive".into());
                }
            }
            ExperimentSpec::Scaling(s) => {
                s.data.validate()?;
                grid_ok("alpha", &s.alphas)?;
                grid_ok("beta", &[s.beta])?;
                grid_ok("success_fraction", &[s.success_fraction])?;
                grid_ok("erm_eta", &[s.erm_eta])?;
                if s.epsilon <= 0.0 {
                    return Err("epsilon must be positive".into());
                }
            }
            ExperimentSpec::Reduction(s) => {
                s.data.validate()?;
                grid_ok("alpha", &[s.alpha])?;
                grid_ok("learner_beta", &[s.learner_beta])?;
                if s.n_pub == 0 || s.completion_runs == 0 || s.completion_n_priv == 0 {
                    return Err("reduction sizes must be at least 1".into());
                }
                if s.epsilon <= 0.0 {
                    return Err("epsilon must be positive".into());
                }
                if s.mixture_draws < 1000 {
                    return Err("mixture_draws must be at least 1000".into());
                }
            }
            ExperimentSpec::Audit(s) => {
                if s.epsilons.is_empty() || s.epsilons.iter().any(|e| *e <= 0.0) {
                    return Err("epsilon grid must be nonempty and positive".into());
                }
                if s.atoms.is_empty() || s.atoms.len() > 8 || s.n == 0 || s.n > 8 {
                    return Err("audit needs 1..=8 atoms and 1..=8 examples".into());
                }
                if s.n_candidates == 0 || s.n_candidates > 8 {
                    return Err("audit needs 1..=8 candidates".into());
                }
                if s.base_samples == 0 {
                    return Err("audit needs at least one base sample".into());
                }
            }
        }
        Ok(())
    }
}
