//! Accuracy structure of the semi-private learner at desk scale: the excess
//! error decomposes into a cover-approximation term plus a mechanism term,
//! and the full pipeline's output distribution is exactly the exponential
//! mechanism's, which carries the privacy audit over to the learner.

use semiprivate::cover::build_cover;
use semiprivate::datagen::{DataDistribution, Example, Labeling, Marginal};
use semiprivate::dpaudit::{enumerate_neighbors, exact_audit, exp_mech_distribution};
use semiprivate::hypothesis::{ConceptClass, Hypothesis};
use semiprivate::learner::{plan_sizes, sspp_learn_detailed};
use semiprivate::rng::SeedTree;

/// Per trial: measured excess <= (cover approximation of the target) +
/// (population excess of the pick within the cover). The decomposition is
/// the triangle inequality, instrumented term by term.
#[test]
fn excess_error_decomposition_bounds_measured_excess() {
    let root = SeedTree::new(7);
    for (kind, eta) in [("realizable", None), ("noisy", Some(0.2))] {
        for trial in 0..50u64 {
            let node = root.child(kind).indexed(trial);
            let mut data_rng = node.stream_for("data");
            let t_star = 0.05 + 0.9 * (trial as f64 / 50.0);
            let target = Hypothesis::threshold(t_star);
            let labeling = match eta {
                None => Labeling::Realizable {
                    target: target.clone(),
                },
                Some(eta) => Labeling::Noisy {
                    target: target.clone(),
                    eta,
                },
            };
            let dist = DataDistribution {
                marginal: Marginal::Uniform,
                labeling,
            };
            let public = Marginal::Uniform.sample_n(120, &mut node.stream_for("public"));
            let private = dist.sample_labeled(1500, &mut data_rng);
            let out = sspp_learn_detailed(
                ConceptClass::Thresholds,
                &private,
                &public,
                1.0,
                &mut node.stream_for("mech"),
            )
            .unwrap();

            let cover = build_cover(ConceptClass::Thresholds, &public).unwrap();
            let opt = dist.optimal_error();
            let excess = dist.population_error(&out.hypothesis) - opt;
            let cover_term = cover
                .hypotheses()
                .map(|h| {
                    semiprivate::hypothesis::expected_disagreement(h, &target, &dist.marginal)
                })
                .fold(f64::INFINITY, f64::min);
            let best_in_cover = cover
                .hypotheses()
                .map(|h| dist.population_error(h))
                .fold(f64::INFINITY, f64::min);
            let mech_term = dist.population_error(&out.hypothesis) - best_in_cover;
            assert!(
                excess <= cover_term + mech_term + 1e-12,
                "{kind} trial {trial}: excess {excess} > {cover_term} + {mech_term}"
            );
        }
    }
}

/// At planned sizes the learner meets its excess target comfortably on a
/// noisy instance (the full-scale frequency experiment lives in the
/// harness acceptance suite).
#[test]
fn planned_sizes_reach_target_on_noisy_thresholds() {
    let plan = plan_sizes(1, 0.2, 0.1, 1.0);
    let root = SeedTree::new(99);
    let target = Hypothesis::threshold(0.41);
    let dist = DataDistribution {
        marginal: Marginal::Uniform,
        labeling: Labeling::Noisy {
            target: target.clone(),
            eta: 0.2,
        },
    };
    let mut successes = 0;
    let trials = 40;
    for trial in 0..trials {
        let node = root.indexed(trial);
        let public = Marginal::Uniform.sample_n(plan.n_pub as usize, &mut node.stream_for("pub"));
        let private = dist.sample_labeled(plan.n_priv as usize, &mut node.stream_for("priv"));
        let h = semiprivate::learner::sspp_learn(
            ConceptClass::Thresholds,
            &private,
            &public,
            1.0,
            &mut node.stream_for("mech"),
        )
        .unwrap();
        let excess = dist.population_error(&h) - dist.optimal_error();
        if excess <= plan.alpha {
            successes += 1;
        }
    }
    assert!(successes >= 36, "{successes}/{trials} trials met the target");
}

/// With the public input fixed, the learner's output distribution over the
/// cover is exactly the exponential mechanism over its miss counts, so the
/// exact DP audit applies to the whole pipeline.
#[test]
fn pipeline_audit_passes_at_epsilon() {
    let atoms = [0.2, 0.5, 0.8];
    let public = [0.35, 0.65, 0.9];
    let cover = build_cover(ConceptClass::Thresholds, &public).unwrap();
    let candidates: Vec<Hypothesis> = cover.hypotheses().cloned().collect();
    assert_eq!(candidates.len(), 4);
    let sample = vec![
        Example { x: 0.2, y: true },
        Example { x: 0.5, y: false },
        Example { x: 0.8, y: true },
    ];
    for eps in [0.1, 1.0, 5.0] {
        let pairs = enumerate_neighbors(&sample, &atoms).unwrap();
        let report = exact_audit(
            |s| exp_mech_distribution(&candidates, eps, s),
            &pairs,
            eps,
        )
        .unwrap();
        assert!(report.verdict.passed(), "eps {eps}: {report:?}");
    }
}
