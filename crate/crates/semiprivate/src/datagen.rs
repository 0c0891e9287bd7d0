//! Synthetic data distributions over `[0, 1] x {0, 1}`.
//!
//! A [`DataDistribution`] pairs a [`Marginal`] over the domain with a
//! [`Labeling`] rule. The labeling rules cover the realizable case, a
//! noisy-target case (each label flipped independently with probability
//! `eta < 1/2`, so the target stays the population optimum), and uniformly
//! random labels. The latter is the "dummy" distribution used by the
//! public-data reduction: every hypothesis has error exactly 1/2 against it.
//!
//! Population errors are closed-form for every implemented pairing; Monte
//! Carlo estimators are provided alongside as independent checks.

use crate::hypothesis::{expected_disagreement, Hypothesis};
use rand::Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error, PartialEq)]
pub enum DatagenError {
    #[error("invalid marginal: {0}")]
    BadMarginal(String),
    #[error("invalid labeling: {0}")]
    BadLabeling(String),
    #[error("mixture dummy must have uniformly random labels")]
    DummyNotUniform,
}

/// One labeled example.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Example {
    pub x: f64,
    pub y: bool,
}

/// A marginal distribution over the domain `[0, 1]`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Marginal {
    Uniform,
    /// Piecewise-uniform density: `weights[i]` is the mass of
    /// `[breaks[i], breaks[i+1])`.
    PiecewiseUniform { breaks: Vec<f64>, weights: Vec<f64> },
    /// Point masses at strictly increasing locations.
    Atoms { points: Vec<f64>, probs: Vec<f64> },
}

const MASS_TOL: f64 = 1e-12;

impl Marginal {
    pub fn validate(&self) -> Result<(), DatagenError> {
        let bad = |msg: String| Err(DatagenError::BadMarginal(msg));
        match self {
            Marginal::Uniform => Ok(()),
            Marginal::PiecewiseUniform { breaks, weights } => {
                if breaks.len() != weights.len() + 1 || weights.is_empty() {
                    return bad("need |breaks| == |weights| + 1 >= 2".into());
                }
                if !breaks
                    .iter()
                    .all(|b| b.is_finite() && (0.0..=1.0).contains(b))
                    || breaks.windows(2).any(|w| w[0] >= w[1])
                {
                    return bad("breakpoints must be strictly increasing within [0, 1]".into());
                }
                check_mass(weights).map_err(DatagenError::BadMarginal)
            }
            Marginal::Atoms { points, probs } => {
                if points.len() != probs.len() || points.is_empty() {
                    return bad("need |points| == |probs| >= 1".into());
                }
                if !points
                    .iter()
                    .all(|p| p.is_finite() && (0.0..=1.0).contains(p))
                    || points.windows(2).any(|w| w[0] >= w[1])
                {
                    return bad("atom locations must be strictly increasing within [0, 1]".into());
                }
                check_mass(probs).map_err(DatagenError::BadMarginal)
            }
        }
    }

    /// Quantile function; drives both sampling and distribution tests.
    pub fn quantile(&self, u: f64) -> f64 {
        debug_assert!((0.0..=1.0).contains(&u));
        match self {
            Marginal::Uniform => u,
            Marginal::PiecewiseUniform { breaks, weights } => {
                let mut acc = 0.0;
                for (i, &w) in weights.iter().enumerate() {
                    if u <= acc + w || i == weights.len() - 1 {
                        let frac = if w > 0.0 { (u - acc) / w } else { 0.0 };
                        return breaks[i] + frac.clamp(0.0, 1.0) * (breaks[i + 1] - breaks[i]);
                    }
                    acc += w;
                }
                breaks[breaks.len() - 1]
            }
            Marginal::Atoms { points, probs } => {
                let mut acc = 0.0;
                for (i, &p) in probs.iter().enumerate() {
                    acc += p;
                    if u < acc || i == probs.len() - 1 {
                        return points[i];
                    }
                }
                points[points.len() - 1]
            }
        }
    }

    pub fn sample(&self, rng: &mut impl Rng) -> f64 {
        self.quantile(rng.random::<f64>())
    }

    /// `n` i.i.d. draws.
    pub fn sample_n(&self, n: usize, rng: &mut impl Rng) -> Vec<f64> {
        (0..n).map(|_| self.sample(rng)).collect()
    }

    /// `P[X <= x]`.
    pub fn cdf(&self, x: f64) -> f64 {
        match self {
            Marginal::Uniform => x.clamp(0.0, 1.0),
            Marginal::PiecewiseUniform { breaks, weights } => {
                if x < breaks[0] {
                    return 0.0;
                }
                let mut acc = 0.0;
                for (i, &w) in weights.iter().enumerate() {
                    if x >= breaks[i + 1] {
                        acc += w;
                    } else {
                        acc += w * (x - breaks[i]) / (breaks[i + 1] - breaks[i]);
                        break;
                    }
                }
                acc.min(1.0)
            }
            Marginal::Atoms { points, probs } => points
                .iter()
                .zip(probs)
                .take_while(|(p, _)| **p <= x)
                .map(|(_, q)| *q)
                .sum(),
        }
    }

    /// Mass the continuous component assigns to `(lo, hi)`; zero for a
    /// purely atomic marginal. Endpoint inclusion is immaterial here.
    pub fn continuous_mass_between(&self, lo: f64, hi: f64) -> f64 {
        match self {
            Marginal::Atoms { .. } => 0.0,
            _ => (self.cdf(hi) - self.cdf(lo)).max(0.0),
        }
    }

    /// The atomic component as `(location, mass)` pairs.
    pub fn atoms(&self) -> impl Iterator<Item = (f64, f64)> + '_ {
        match self {
            Marginal::Atoms { points, probs } => {
                Some(points.iter().copied().zip(probs.iter().copied()))
            }
            _ => None,
        }
        .into_iter()
        .flatten()
    }

    /// True when the cumulative distribution function is continuous, which
    /// is what the exact cover checker requires.
    pub fn is_continuous(&self) -> bool {
        !matches!(self, Marginal::Atoms { .. })
    }
}

fn check_mass(ws: &[f64]) -> Result<(), String> {
    if ws.iter().any(|w| !w.is_finite() || *w < 0.0) {
        return Err("masses must be nonnegative".into());
    }
    let total: f64 = ws.iter().sum();
    if (total - 1.0).abs() > MASS_TOL {
        return Err(format!("masses must sum to 1, got {total}"));
    }
    Ok(())
}

/// How labels are generated given a point.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Labeling {
    Realizable { target: Hypothesis },
    /// Target label flipped independently with probability `eta < 1/2`.
    Noisy { target: Hypothesis, eta: f64 },
    /// Fair coin independent of the point.
    UniformRandom,
}

impl Labeling {
    pub fn validate(&self) -> Result<(), DatagenError> {
        match self {
            Labeling::Realizable { target } => target
                .validate()
                .map_err(|e| DatagenError::BadLabeling(e.to_string())),
            Labeling::Noisy { target, eta } => {
                target
                    .validate()
                    .map_err(|e| DatagenError::BadLabeling(e.to_string()))?;
                if !(0.0..0.5).contains(eta) {
                    return Err(DatagenError::BadLabeling(format!(
                        "eta must lie in [0, 1/2), got {eta}"
                    )));
                }
                Ok(())
            }
            Labeling::UniformRandom => Ok(()),
        }
    }

    pub fn label(&self, x: f64, rng: &mut impl Rng) -> bool {
        match self {
            Labeling::Realizable { target } => target.predict(x),
            Labeling::Noisy { target, eta } => {
                let flip = rng.random::<f64>() < *eta;
                target.predict(x) != flip
            }
            Labeling::UniformRandom => rng.random::<bool>(),
        }
    }
}

/// A distribution over labeled examples.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DataDistribution {
    pub marginal: Marginal,
    pub labeling: Labeling,
}

impl DataDistribution {
    pub fn new(marginal: Marginal, labeling: Labeling) -> Result<Self, DatagenError> {
        marginal.validate()?;
        labeling.validate()?;
        Ok(DataDistribution { marginal, labeling })
    }

    /// The dummy distribution: uniform marginal, coin-flip labels.
    pub fn dummy_uniform() -> Self {
        DataDistribution {
            marginal: Marginal::Uniform,
            labeling: Labeling::UniformRandom,
        }
    }

    pub fn sample_one(&self, rng: &mut impl Rng) -> Example {
        let x = self.marginal.sample(rng);
        let y = self.labeling.label(x, rng);
        Example { x, y }
    }

    /// `n` i.i.d. labeled draws, reproducible given the stream.
    pub fn sample_labeled(&self, n: usize, rng: &mut impl Rng) -> Vec<Example> {
        (0..n).map(|_| self.sample_one(rng)).collect()
    }

    /// Exact population error of `h` against this distribution.
    pub fn population_error(&self, h: &Hypothesis) -> f64 {
        match &self.labeling {
            Labeling::Realizable { target } => expected_disagreement(h, target, &self.marginal),
            Labeling::Noisy { target, eta } => {
                eta + (1.0 - 2.0 * eta) * expected_disagreement(h, target, &self.marginal)
            }
            Labeling::UniformRandom => 0.5,
        }
    }

    /// The smallest population error over the class; the implemented
    /// labelings make the target (or any hypothesis, for coin labels) the
    /// optimum.
    pub fn optimal_error(&self) -> f64 {
        match &self.labeling {
            Labeling::Realizable { .. } => 0.0,
            Labeling::Noisy { eta, .. } => *eta,
            Labeling::UniformRandom => 0.5,
        }
    }

    /// Monte Carlo estimate of the population error with its standard error.
    pub fn mc_population_error(&self, h: &Hypothesis, n: usize, rng: &mut impl Rng) -> (f64, f64) {
        let sample = self.sample_labeled(n, rng);
        let misses = sample.iter().filter(|e| h.predict(e.x) != e.y).count();
        let est = misses as f64 / n as f64;
        (est, (est * (1.0 - est) / n as f64).sqrt())
    }
}

/// Draws from `primary` with probability `p`, otherwise from `dummy`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MixtureDistribution {
    pub p: f64,
    pub primary: DataDistribution,
    pub dummy: DataDistribution,
}

impl MixtureDistribution {
    pub fn new(p: f64, primary: DataDistribution, dummy: DataDistribution) -> Result<Self, DatagenError> {
        if !(0.0..=1.0).contains(&p) {
            return Err(DatagenError::BadMarginal(format!(
                "mixture weight must lie in [0, 1], got {p}"
            )));
        }
        Ok(MixtureDistribution { p, primary, dummy })
    }

    pub fn sample_one(&self, rng: &mut impl Rng) -> Example {
        if rng.random::<f64>() < self.p {
            self.primary.sample_one(rng)
        } else {
            self.dummy.sample_one(rng)
        }
    }

    pub fn sample_labeled(&self, n: usize, rng: &mut impl Rng) -> Vec<Example> {
        (0..n).map(|_| self.sample_one(rng)).collect()
    }

    /// Exact mixture error: `p * err(h; primary) + (1 - p) / 2`. Requires
    /// coin-flip dummy labels, which is what makes the identity hold.
    pub fn mixture_error(&self, h: &Hypothesis) -> Result<f64, DatagenError> {
        if !matches!(self.dummy.labeling, Labeling::UniformRandom) {
            return Err(DatagenError::DummyNotUniform);
        }
        Ok(self.p * self.primary.population_error(h) + 0.5 * (1.0 - self.p))
    }

    /// Monte Carlo estimate of the mixture error with its standard error.
    pub fn mc_mixture_error(&self, h: &Hypothesis, n: usize, rng: &mut impl Rng) -> (f64, f64) {
        let misses = (0..n)
            .filter(|_| {
                let e = self.sample_one(rng);
                h.predict(e.x) != e.y
            })
            .count();
        let est = misses as f64 / n as f64;
        (est, (est * (1.0 - est) / n as f64).sqrt())
    }
}

/// Monte Carlo estimate of the expected disagreement with standard error;
/// the independent check for the closed form in `hypothesis`.
pub fn mc_disagreement(
    h1: &Hypothesis,
    h2: &Hypothesis,
    marginal: &Marginal,
    n: usize,
    rng: &mut impl Rng,
) -> (f64, f64) {
    let differ = (0..n)
        .filter(|_| {
            let x = marginal.sample(rng);
            h1.predict(x) != h2.predict(x)
        })
        .count();
    let est = differ as f64 / n as f64;
    (est, (est * (1.0 - est) / n as f64).sqrt())
}
