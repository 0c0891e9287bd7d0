//! Semi-private learning of one-dimensional concept classes.
//!
//! A semi-private learner receives a private labeled sample, for which it
//! must satisfy differential privacy, together with a public sample that
//! carries no privacy constraint. This crate implements the
//! unlabeled-public-data variant end to end on concrete low-VC classes
//! (thresholds, intervals, unions of intervals over `[0, 1]`), along with
//! the machinery needed to verify its guarantees numerically:
//!
//! - [`hypothesis`]: concept classes, dichotomy enumeration on finite point
//!   sets, and exact disagreement metrics.
//! - [`datagen`]: synthetic data distributions, label noise, the
//!   uniform-label dummy distribution, mixtures, and seeded sampling.
//! - [`cover`]: building a finite hypothesis cover from public unlabeled
//!   points and verifying/bounding its covering radius.
//! - [`mechanism`]: the exponential mechanism over a finite candidate set
//!   with an exact-distribution oracle.
//! - [`learner`]: the end-to-end semi-private learner and an exact
//!   public-data ERM baseline.
//! - [`reduction`]: the wrapper that turns a semi-private learner into a
//!   fully private learner for realizable distributions by diluting the
//!   private sample into dummy data.
//! - [`dpaudit`]: exact and empirical differential-privacy audits over
//!   enumerable neighboring datasets.
//!
//! All randomness flows through named [`rng`] streams derived from a single
//! root seed, so every experiment is replayable component by component.

pub mod cover;
pub mod datagen;
pub mod dpaudit;
pub mod hypothesis;
pub mod learner;
pub mod mechanism;
pub mod reduction;
pub mod rng;

pub use datagen::{DataDistribution, Example, Labeling, Marginal, MixtureDistribution};
pub use hypothesis::{ConceptClass, Dichotomy, Hypothesis};
pub use rng::SeedTree;
