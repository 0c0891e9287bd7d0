//! Finite hypothesis covers built from public unlabeled data.
//!
//! [`build_cover`] deduplicates the public points, enumerates every
//! dichotomy the class realizes on them, and keeps one representative per
//! dichotomy. With enough public data the representatives form an
//! alpha-cover of the whole class under the data marginal: every hypothesis
//! is within expected disagreement alpha of some representative.
//!
//! Verification is exact where the parameter space allows it. For
//! thresholds the covering radius has a closed form in CDF space. For
//! intervals the checker runs a certified subdivision of the two-parameter
//! space using the 1-Lipschitz structure of symmetric-difference mass, which
//! decides the alpha question to a 1e-9 resolution. Higher-dimensional
//! classes fall back to a dense grid and are reported as grid-verified, not
//! exact.

use crate::datagen::Marginal;
use crate::hypothesis::{
    representative_unchecked, ConceptClass, Dichotomy, Hypothesis, HypothesisError,
};
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error, PartialEq)]
pub enum CoverError {
    #[error("exact verification of {class} needs a continuous marginal; use grid_sup_min")]
    Unsupported { class: ConceptClass },
    #[error("domain violation: {0}")]
    Domain(String),
    #[error(transparent)]
    Hypothesis(#[from] HypothesisError),
}

/// One cover entry: a realizable dichotomy of the public points and a
/// hypothesis consistent with it.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CoverEntry {
    pub dichotomy: Dichotomy,
    pub hypothesis: Hypothesis,
}

/// The finite class built from public unlabeled data.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Cover {
    pub class: ConceptClass,
    /// Deduplicated, sorted public points.
    pub points: Vec<f64>,
    /// One entry per realizable dichotomy, in projection order.
    pub entries: Vec<CoverEntry>,
}

impl Cover {
    pub fn size(&self) -> usize {
        self.entries.len()
    }

    pub fn hypotheses(&self) -> impl Iterator<Item = &Hypothesis> {
        self.entries.iter().map(|e| &e.hypothesis)
    }
}

/// Sort and deduplicate raw public points by exact equality.
pub fn dedup_points(raw: &[f64]) -> Result<Vec<f64>, HypothesisError> {
    if !raw
        .iter()
        .all(|x| x.is_finite() && (0.0..=1.0).contains(x))
    {
        return Err(HypothesisError::BadPointList);
    }
    let mut points = raw.to_vec();
    points.sort_by(f64::total_cmp);
    points.dedup();
    Ok(points)
}

/// Deterministically build the cover of `class` over the public points.
/// Duplicates are removed first; the empty input yields the one-entry cover
/// holding the class's default hypothesis.
pub fn build_cover(class: ConceptClass, public_points: &[f64]) -> Result<Cover, HypothesisError> {
    let points = dedup_points(public_points)?;
    let entries = class
        .project(&points)?
        .into_iter()
        .map(|dichotomy| {
            let hypothesis = representative_unchecked(class, &points, dichotomy.bits());
            CoverEntry {
                dichotomy,
                hypothesis,
            }
        })
        .collect();
    Ok(Cover {
        class,
        points,
        entries,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "method", rename_all = "snake_case")]
pub enum VerifyMethod {
    /// Closed-form analysis of the parameter cells.
    ExactCells,
    /// Certified branch-and-bound subdivision (resolution 1e-9).
    CertifiedSubdivision,
    /// Dense-grid lower bound on the covering radius; not exact.
    Grid { cells_per_param: usize },
}

/// Outcome of a covering-radius check. `sup_min` is the covering radius
/// `sup_h min_entry dis(h, entry)`; the two bounds bracket it (they coincide
/// on the exact path).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CoverVerdict {
    pub is_cover: bool,
    pub method: VerifyMethod,
    pub sup_min_lower: f64,
    pub sup_min_upper: f64,
}

/// Decide whether the cover is an alpha-cover of its whole class under the
/// marginal. Thresholds and intervals are decided exactly (the latter to a
/// 1e-9 resolution) and require a continuous marginal; unions fall back to
/// [`grid_sup_min`] and the verdict is marked grid-verified.
pub fn is_alpha_cover(
    cover: &Cover,
    marginal: &Marginal,
    alpha: f64,
) -> Result<CoverVerdict, CoverError> {
    if !(alpha > 0.0 && alpha < 1.0) {
        return Err(CoverError::Domain(format!("alpha must be in (0, 1), got {alpha}")));
    }
    match cover.class {
        ConceptClass::Thresholds => {
            if !marginal.is_continuous() {
                return Err(CoverError::Unsupported { class: cover.class });
            }
            let sup = threshold_covering_radius(cover, marginal);
            Ok(CoverVerdict {
                is_cover: sup <= alpha,
                method: VerifyMethod::ExactCells,
                sup_min_lower: sup,
                sup_min_upper: sup,
            })
        }
        ConceptClass::Intervals => {
            if !marginal.is_continuous() {
                return Err(CoverError::Unsupported { class: cover.class });
            }
            Ok(interval_alpha_check(cover, marginal, alpha))
        }
        ConceptClass::IntervalUnions { k } => {
            // Joint grids over 2k parameters blow up fast; pick a resolution
            // that keeps the candidate count near 10^6.
            let cells = ((1.5e6_f64).powf(1.0 / (2.0 * k as f64)).floor() as usize).max(8);
            let sup_lower = grid_sup_min(cover, marginal, cells)?;
            Ok(CoverVerdict {
                is_cover: sup_lower <= alpha,
                method: VerifyMethod::Grid { cells_per_param: cells },
                sup_min_lower: sup_lower,
                sup_min_upper: 1.0,
            })
        }
    }
}

/// Exact covering radius for thresholds under a continuous marginal.
///
/// In CDF space a threshold at `t` becomes the scalar `u = F(t)` and the
/// disagreement of two thresholds is `|u1 - u2|`. The radius is therefore
/// the largest distance from any `u` in `[0, 1]` to the representative set:
/// the edge gaps plus half of each interior gap.
fn threshold_covering_radius(cover: &Cover, marginal: &Marginal) -> f64 {
    let mut us: Vec<f64> = cover
        .hypotheses()
        .map(|h| match h {
            Hypothesis::Threshold { t } => marginal.cdf(t.clamp(0.0, 1.0)),
            _ => unreachable!("threshold cover holds threshold representatives"),
        })
        .collect();
    if us.is_empty() {
        return 1.0;
    }
    us.sort_by(f64::total_cmp);
    let mut sup = us[0].max(1.0 - us[us.len() - 1]);
    for w in us.windows(2) {
        sup = sup.max(0.5 * (w[1] - w[0]));
    }
    sup
}

/// Length of the symmetric difference of two intervals given as
/// `(lo, hi)` pairs in CDF space.
fn symdiff_len(a: (f64, f64), b: (f64, f64)) -> f64 {
    let la = a.1 - a.0;
    let lb = b.1 - b.0;
    let overlap = (a.1.min(b.1) - a.0.max(b.0)).max(0.0);
    la + lb - 2.0 * overlap
}

const SUBDIVISION_RESOLUTION: f64 = 5e-10;

/// Certified alpha decision for interval covers.
///
/// Queries and representatives map to CDF-space intervals, where the
/// covering objective `g(p, q) = min_k symdiff([p, q], rep_k)` is
/// 1-Lipschitz in each coordinate. Subdivide `[0,1]^2` (treating the
/// coordinates as an unordered pair): a box is certified once
/// `g(center) + 2 * halfwidth <= alpha`, and any evaluated point with
/// `g > alpha` is a witness that the cover fails.
fn interval_alpha_check(cover: &Cover, marginal: &Marginal, alpha: f64) -> CoverVerdict {
    let reps: Vec<(f64, f64)> = cover
        .hypotheses()
        .map(|h| match h {
            Hypothesis::Interval { lo, hi } => {
                (marginal.cdf(lo.clamp(0.0, 1.0)), marginal.cdf(hi.clamp(0.0, 1.0)))
            }
            _ => unreachable!("interval cover holds interval representatives"),
        })
        .collect();

    let g = |p: f64, q: f64| -> f64 {
        let query = (p.min(q), p.max(q));
        reps.iter()
            .map(|r| symdiff_len(query, *r))
            .fold(f64::INFINITY, f64::min)
    };

    let mut worst_seen = 0.0f64;
    let mut stack = vec![(0.0f64, 1.0f64, 0.0f64, 1.0f64)];
    while let Some((pl, ph, ql, qh)) = stack.pop() {
        let pc = 0.5 * (pl + ph);
        let qc = 0.5 * (ql + qh);
        let v = g(pc, qc);
        worst_seen = worst_seen.max(v);
        if v > alpha {
            return CoverVerdict {
                is_cover: false,
                method: VerifyMethod::CertifiedSubdivision,
                sup_min_lower: v,
                sup_min_upper: 1.0,
            };
        }
        let hw = 0.5 * (ph - pl).max(qh - ql);
        if v + 2.0 * hw <= alpha || hw < SUBDIVISION_RESOLUTION {
            continue;
        }
        stack.push((pl, pc, ql, qc));
        stack.push((pc, ph, ql, qc));
        stack.push((pl, pc, qc, qh));
        stack.push((pc, ph, qc, qh));
    }
    CoverVerdict {
        is_cover: true,
        method: VerifyMethod::CertifiedSubdivision,
        sup_min_lower: worst_seen,
        sup_min_upper: alpha + 4.0 * SUBDIVISION_RESOLUTION,
    }
}

/// Dense-grid lower bound on the covering radius: the worst grid candidate's
/// distance to the cover. Works for every class/marginal pair; used as the
/// independent oracle for the exact checkers and as the (documented,
/// non-exact) verifier for union classes.
pub fn grid_sup_min(
    cover: &Cover,
    marginal: &Marginal,
    cells_per_param: usize,
) -> Result<f64, CoverError> {
    if cells_per_param < 2 {
        return Err(CoverError::Domain("need at least 2 grid cells".into()));
    }
    let grid: Vec<f64> = (0..=cells_per_param)
        .map(|i| i as f64 / cells_per_param as f64)
        .collect();
    let min_dist = |h: &Hypothesis| -> f64 {
        cover
            .hypotheses()
            .map(|rep| crate::hypothesis::expected_disagreement(h, rep, marginal))
            .fold(f64::INFINITY, f64::min)
    };

    let mut worst = 0.0f64;
    match cover.class {
        ConceptClass::Thresholds => {
            for &t in &grid {
                worst = worst.max(min_dist(&Hypothesis::threshold(t)));
            }
            worst = worst.max(min_dist(&Hypothesis::threshold(1.5)));
        }
        ConceptClass::Intervals => {
            for (i, &lo) in grid.iter().enumerate() {
                for &hi in &grid[i..] {
                    worst = worst.max(min_dist(&Hypothesis::interval(lo, hi)));
                }
            }
            worst = worst.max(min_dist(&Hypothesis::interval(1.5, 1.5)));
        }
        ConceptClass::IntervalUnions { k } => {
            let mut parts: Vec<[f64; 2]> = Vec::with_capacity(k);
            worst = worst.max(min_dist(&Hypothesis::union(vec![])));
            grid_unions(&grid, k, 0, &mut parts, &mut |parts| {
                worst = worst.max(min_dist(&Hypothesis::union(parts.to_vec())));
            });
        }
    }
    Ok(worst)
}

/// Enumerate unions of up to `max_parts` disjoint grid intervals.
fn grid_unions(
    grid: &[f64],
    max_parts: usize,
    start: usize,
    parts: &mut Vec<[f64; 2]>,
    visit: &mut impl FnMut(&[[f64; 2]]),
) {
    if parts.len() == max_parts {
        return;
    }
    for i in start..grid.len() {
        for j in i..grid.len() {
            parts.push([grid[i], grid[j]]);
            visit(parts);
            grid_unions(grid, max_parts, j + 2, parts, visit);
            parts.pop();
        }
    }
}

/// Probability that the cover built from `n_pub` marginal draws fails to be
/// an alpha-cover for a class of VC dimension `d`, bounded by
/// `min(1, 2 * (2e n/d)^(2d) * exp(-alpha n / 4))`, evaluated in log space.
pub fn cover_failure_bound(d: usize, alpha: f64, n_pub: u64) -> Result<f64, CoverError> {
    if d == 0 {
        return Err(CoverError::Domain("need d >= 1".into()));
    }
    if !(alpha > 0.0 && alpha < 1.0) {
        return Err(CoverError::Domain(format!("alpha must be in (0, 1), got {alpha}")));
    }
    if n_pub < d as u64 {
        return Err(CoverError::Domain(format!("need n_pub >= d, got {n_pub} < {d}")));
    }
    let n = n_pub as f64;
    let d = d as f64;
    let log_bound = std::f64::consts::LN_2
        + 2.0 * d * (2.0 * std::f64::consts::E * n / d).ln()
        - alpha * n / 4.0;
    Ok(log_bound.min(0.0).exp())
}

/// Default leading constant for [`public_sample_size`], calibrated against
/// the exact failure bound (the binary search makes it self-correcting).
pub const DEFAULT_COVER_C: f64 = 8.0;

/// Smallest `n >= C (d ln(1/alpha) + ln(1/beta)) / alpha` with
/// `cover_failure_bound(d, alpha, n) <= beta`, found by doubling plus binary
/// search. The bound peaks at `n = 8d/alpha` and decreases beyond it, which
/// is what makes the bisection sound.
pub fn public_sample_size(d: usize, alpha: f64, beta: f64, c: f64) -> u64 {
    assert!(d >= 1, "need d >= 1");
    assert!(alpha > 0.0 && alpha < 1.0, "need alpha in (0, 1)");
    assert!(beta > 0.0 && beta < 1.0, "need beta in (0, 1)");
    assert!(c > 0.0, "need c > 0");
    let df = d as f64;
    let floor_n = (c * (df * (1.0 / alpha).ln() + (1.0 / beta).ln()) / alpha).ceil();
    let n0 = (floor_n.max(df) as u64).max(1);
    let ok = |n: u64| cover_failure_bound(d, alpha, n).expect("domain checked") <= beta;
    if ok(n0) {
        return n0;
    }
    // No n below the stationary point can succeed once n0 failed, so the
    // search runs on the decreasing branch only.
    let stationary = (8.0 * df / alpha).ceil() as u64;
    let lo = n0.max(stationary);
    let mut hi = lo.max(1);
    while !ok(hi) {
        hi = hi.saturating_mul(2);
    }
    let mut bad = lo - 1;
    let mut good = hi;
    while good - bad > 1 {
        let mid = bad + (good - bad) / 2;
        if ok(mid) {
            good = mid;
        } else {
            bad = mid;
        }
    }
    good
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hypothesis::empirical_disagreement;
    use crate::rng::SeedTree;

    fn uniform_points(n: usize, seed: u64) -> Vec<f64> {
        let mut rng = SeedTree::new(seed).stream_for("pts");
        Marginal::Uniform.sample_n(n, &mut rng)
    }

    #[test]
    fn threshold_cover_sizes() {
        let cover = build_cover(ConceptClass::Thresholds, &[0.5]).unwrap();
        assert_eq!(cover.size(), 2);
        assert_eq!(cover.entries[0].hypothesis, Hypothesis::threshold(0.5));
        assert_eq!(cover.entries[1].hypothesis, Hypothesis::threshold(0.75));

        let nine = uniform_points(9, 1);
        let cover = build_cover(ConceptClass::Thresholds, &nine).unwrap();
        assert_eq!(cover.size(), 10);

        let four = uniform_points(4, 2);
        let cover = build_cover(ConceptClass::Intervals, &four).unwrap();
        assert_eq!(cover.size(), 11);
    }

    #[test]
    fn duplicates_collapse() {
        let cover = build_cover(ConceptClass::Thresholds, &[0.3, 0.3, 0.7, 0.3]).unwrap();
        assert_eq!(cover.points, vec![0.3, 0.7]);
        assert_eq!(cover.size(), 3);
    }

    #[test]
    fn cover_is_deterministic_bytes() {
        let pts = uniform_points(30, 5);
        let a = build_cover(ConceptClass::Intervals, &pts).unwrap();
        let b = build_cover(ConceptClass::Intervals, &pts).unwrap();
        assert_eq!(
            serde_json::to_string(&a).unwrap(),
            serde_json::to_string(&b).unwrap()
        );
    }

    #[test]
    fn entries_pairwise_distinguished_on_points() {
        // two representatives that agree on every public point would be the
        // same entry: projection is injective on the point set
        let pts = dedup_points(&uniform_points(12, 7)).unwrap();
        let cover = build_cover(ConceptClass::Intervals, &pts).unwrap();
        for (i, a) in cover.entries.iter().enumerate() {
            for b in cover.entries.iter().skip(i + 1) {
                let d = empirical_disagreement(&a.hypothesis, &b.hypothesis, &pts).unwrap();
                assert!(d > 0.0);
            }
        }
    }

    #[test]
    fn cover_size_within_sauer_bound() {
        for class in [ConceptClass::Thresholds, ConceptClass::Intervals] {
            let d = class.vc_dim() as f64;
            for m in [5usize, 20, 60] {
                let pts = dedup_points(&uniform_points(m, m as u64)).unwrap();
                let cover = build_cover(class, &pts).unwrap();
                let bound = (std::f64::consts::E * pts.len() as f64 / d).powf(d);
                assert!((cover.size() as f64) <= bound);
            }
        }
    }

    #[test]
    fn alpha_cover_grid_of_half_alpha_spacing() {
        let alpha = 0.2;
        let pts: Vec<f64> = (0..=10).map(|i| i as f64 * alpha / 2.0).collect();
        let cover = build_cover(ConceptClass::Thresholds, &pts).unwrap();
        let verdict = is_alpha_cover(&cover, &Marginal::Uniform, alpha).unwrap();
        assert!(verdict.is_cover);
        assert_eq!(verdict.method, VerifyMethod::ExactCells);
        assert!(verdict.sup_min_upper <= alpha);
    }

    #[test]
    fn single_point_is_not_a_tight_cover() {
        let cover = build_cover(ConceptClass::Thresholds, &[0.5]).unwrap();
        let verdict = is_alpha_cover(&cover, &Marginal::Uniform, 0.1).unwrap();
        assert!(!verdict.is_cover);
        assert!(verdict.sup_min_lower >= 0.4);
    }

    #[test]
    fn exact_threshold_check_matches_dense_grid_oracle() {
        let pts = uniform_points(200, 11);
        let cover = build_cover(ConceptClass::Thresholds, &pts).unwrap();
        let verdict = is_alpha_cover(&cover, &Marginal::Uniform, 0.1).unwrap();
        let grid = grid_sup_min(&cover, &Marginal::Uniform, 100_000).unwrap();
        assert_eq!(verdict.is_cover, grid <= 0.1);
        assert!(grid <= verdict.sup_min_lower + 1e-12);
        assert!(verdict.sup_min_lower <= grid + 1e-5 + 1e-12);

        // a failing instance agrees too
        let sparse = build_cover(ConceptClass::Thresholds, &uniform_points(5, 12)).unwrap();
        let verdict = is_alpha_cover(&sparse, &Marginal::Uniform, 0.02).unwrap();
        let grid = grid_sup_min(&sparse, &Marginal::Uniform, 10_000).unwrap();
        assert!(!verdict.is_cover);
        assert!(grid > 0.02);
    }

    #[test]
    fn exact_check_under_piecewise_marginal() {
        // mass concentrated on [0, 0.2]: points clustered there cover well
        let marginal = Marginal::PiecewiseUniform {
            breaks: vec![0.0, 0.2, 1.0],
            weights: vec![0.95, 0.05],
        };
        let pts: Vec<f64> = (0..=20).map(|i| i as f64 * 0.01).collect();
        let cover = build_cover(ConceptClass::Thresholds, &pts).unwrap();
        let verdict = is_alpha_cover(&cover, &marginal, 0.1).unwrap();
        assert!(verdict.is_cover, "sup {}", verdict.sup_min_lower);
        // under the uniform marginal the same points leave (0.2, 1] uncovered
        let verdict = is_alpha_cover(&cover, &Marginal::Uniform, 0.1).unwrap();
        assert!(!verdict.is_cover);
    }

    #[test]
    fn atom_marginal_unsupported_for_exact_paths() {
        let cover = build_cover(ConceptClass::Thresholds, &[0.5]).unwrap();
        let atoms = Marginal::Atoms {
            points: vec![0.2, 0.8],
            probs: vec![0.5, 0.5],
        };
        assert_eq!(
            is_alpha_cover(&cover, &atoms, 0.1).unwrap_err(),
            CoverError::Unsupported {
                class: ConceptClass::Thresholds
            }
        );
        // the grid oracle still works there
        assert!(grid_sup_min(&cover, &atoms, 100).is_ok());
    }

    #[test]
    fn interval_subdivision_agrees_with_grid() {
        for seed in 0..4 {
            let pts = dedup_points(&uniform_points(12, 30 + seed)).unwrap();
            let cover = build_cover(ConceptClass::Intervals, &pts).unwrap();
            let grid = grid_sup_min(&cover, &Marginal::Uniform, 250).unwrap();

            let loose = grid + 0.06;
            let verdict = is_alpha_cover(&cover, &Marginal::Uniform, loose).unwrap();
            assert_eq!(verdict.method, VerifyMethod::CertifiedSubdivision);
            assert!(verdict.is_cover, "seed {seed}: grid {grid}");

            let tight = 0.8 * grid;
            if tight > 1e-6 {
                let verdict = is_alpha_cover(&cover, &Marginal::Uniform, tight).unwrap();
                assert!(!verdict.is_cover, "seed {seed}: grid {grid}");
                assert!(verdict.sup_min_lower > tight);
            }
        }
    }

    #[test]
    fn union_cover_is_grid_verified() {
        let pts = dedup_points(&uniform_points(7, 50)).unwrap();
        let cover = build_cover(ConceptClass::IntervalUnions { k: 2 }, &pts).unwrap();
        let verdict = is_alpha_cover(&cover, &Marginal::Uniform, 0.6).unwrap();
        assert!(matches!(verdict.method, VerifyMethod::Grid { .. }));
        assert!(verdict.sup_min_upper == 1.0);
    }

    #[test]
    fn failure_bound_examples() {
        // d=1, alpha=0.1, n=2000: 2*(4000e)^2*e^{-50}
        let b = cover_failure_bound(1, 0.1, 2000).unwrap();
        assert!((b - 4.56e-14).abs() < 0.1e-14, "{b}");
        // clamps to 1 at small n
        assert_eq!(cover_failure_bound(3, 0.2, 3).unwrap(), 1.0);
        // domain violations
        assert!(cover_failure_bound(0, 0.1, 10).is_err());
        assert!(cover_failure_bound(2, 0.1, 1).is_err());
        assert!(cover_failure_bound(1, 1.0, 10).is_err());
    }

    #[test]
    fn failure_bound_decreasing_past_stationary_point() {
        for &(d, alpha) in &[(1usize, 0.1f64), (2, 0.05), (3, 0.2)] {
            let start = (8.0 * d as f64 / alpha).ceil() as u64;
            let mut prev = cover_failure_bound(d, alpha, start).unwrap();
            for step in 1..200u64 {
                let b = cover_failure_bound(d, alpha, start + step * 7).unwrap();
                assert!(b <= prev + 1e-15);
                prev = b;
            }
        }
    }

    #[test]
    fn public_sample_size_postcondition_and_minimality() {
        for &(d, alpha, beta) in &[
            (1usize, 0.1f64, 0.05f64),
            (1, 0.05, 0.05),
            (2, 0.1, 0.1),
            (1, 0.2, 0.01),
        ] {
            let n = public_sample_size(d, alpha, beta, DEFAULT_COVER_C);
            assert!(cover_failure_bound(d, alpha, n).unwrap() <= beta);
            let floor_n = (DEFAULT_COVER_C
                * (d as f64 * (1.0 / alpha).ln() + (1.0 / beta).ln())
                / alpha)
                .ceil() as u64;
            assert!(n >= floor_n);
            if n > floor_n {
                assert!(cover_failure_bound(d, alpha, n - 1).unwrap() > beta);
            }
        }
        // d=1, alpha=0.1, beta=0.05 lands in the low thousands
        let n = public_sample_size(1, 0.1, 0.05, DEFAULT_COVER_C);
        assert!((500..5000).contains(&n), "{n}");
    }

    #[test]
    fn halving_alpha_roughly_doubles_public_size() {
        let alphas = [0.2, 0.1, 0.05, 0.025];
        let ns: Vec<u64> = alphas
            .iter()
            .map(|&a| public_sample_size(1, a, 0.05, DEFAULT_COVER_C))
            .collect();
        for w in ns.windows(2) {
            let ratio = w[1] as f64 / w[0] as f64;
            assert!((2.0..=2.6).contains(&ratio), "ratio {ratio} in {ns:?}");
        }
    }
}
