//! Truncated orbital hulls `O_H^k(x)`: every point reachable from `x` by
//! compositions `ω_{r_m} ∘ … ∘ ω_{r_1}` with `|r_i| ≤ k`.

use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::family::MapFamily;
use crate::flow::OrbitWindow;
use crate::space::SpaceKind;

pub const DEFAULT_DEDUP_EPS: f64 = 1e-9;
pub const DEFAULT_MAX_POINTS: usize = 100_000;

/// Finite, deduplicated approximation of a truncated orbital hull.
#[derive(Debug, Clone, PartialEq)]
pub struct HullSample {
    pub base: f64,
    pub order_k: u64,
    pub depth: u64,
    pub dedup_eps: f64,
    /// Points in discovery order (breadth first, then `r` ascending).
    pub points: Vec<f64>,
    /// `words[i]` lists the indices `r_1, r_2, …` (applied first to last)
    /// that produced `points[i]`.
    pub words: Vec<Vec<i64>>,
    pub budget_exhausted: bool,
    /// The frontier emptied before `depth` levels: the sample is closed
    /// under every `ω_r` with `|r| ≤ order_k`.
    pub stabilized: bool,
}

impl HullSample {
    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    /// Sorted copy of the points.
    pub fn sorted_points(&self) -> Vec<f64> {
        let mut p = self.points.clone();
        p.sort_by(f64::total_cmp);
        p
    }

    /// Distance from `y` to the nearest sample point.
    pub fn distance_to(&self, space: SpaceKind, y: f64) -> f64 {
        self.points
            .iter()
            .map(|&p| space.metric(p, y))
            .fold(f64::INFINITY, f64::min)
    }
}

/// Sorted index of stored points supporting "is anything within eps".
struct PointIndex {
    space: SpaceKind,
    eps: f64,
    // Non-negative floats order like their bit patterns.
    keys: BTreeSet<u64>,
}

impl PointIndex {
    fn new(space: SpaceKind, eps: f64) -> Self {
        Self {
            space,
            eps,
            keys: BTreeSet::new(),
        }
    }

    fn near_in(&self, lo: f64, hi: f64, y: f64) -> bool {
        let lo = lo.max(0.0);
        if hi < lo {
            return false;
        }
        self.keys
            .range(lo.to_bits()..=hi.to_bits())
            .any(|&b| self.space.metric(f64::from_bits(b), y) < self.eps)
    }

    fn has_near(&self, y: f64) -> bool {
        let e = self.eps;
        if self.near_in(y - e, y + e, y) {
            return true;
        }
        if self.space == SpaceKind::Circle {
            return (y < e && self.near_in(1.0 + y - e, 1.0, y))
                || (y > 1.0 - e && self.near_in(0.0, y + e - 1.0, y));
        }
        false
    }

    fn insert(&mut self, y: f64) {
        // -0.0 would sort after every positive key.
        let y = if y == 0.0 { 0.0 } else { y };
        self.keys.insert(y.to_bits());
    }
}

/// Breadth-first enumeration of `O_H^k(x)` up to word length `depth`.
///
/// Words are extended level by level, each frontier point by `r` ascending
/// from `-order_k` to `order_k` (including `r = 0`). A point within
/// `dedup_eps` of a stored point is discarded. When `max_points` would be
/// exceeded the enumeration stops and `budget_exhausted` is set.
pub fn hull_sample(
    family: &MapFamily,
    x: f64,
    order_k: u64,
    depth: u64,
    dedup_eps: f64,
    max_points: usize,
) -> Result<HullSample> {
    if order_k == 0 || depth == 0 {
        return Err(Error::InvalidArgument(
            "hull order and depth must be at least 1".into(),
        ));
    }
    if !(dedup_eps > 0.0) {
        return Err(Error::InvalidArgument("dedup_eps must be positive".into()));
    }
    let space = family.space();
    if !space.contains(x) {
        return Err(Error::Domain { x, space });
    }
    let k = order_k as i64;
    let mut index = PointIndex::new(space, dedup_eps);
    index.insert(x);
    let mut points = vec![x];
    let mut words: Vec<Vec<i64>> = vec![Vec::new()];
    let mut frontier: Vec<usize> = vec![0];
    let mut budget_exhausted = false;
    let mut stabilized = false;

    'levels: for _ in 0..depth {
        let mut next = Vec::new();
        for &i in &frontier {
            let window = OrbitWindow::compute(family, points[i], order_k)?;
            for r in -k..=k {
                let y = window.at(r);
                if index.has_near(y) {
                    continue;
                }
                if points.len() >= max_points.max(1) {
                    budget_exhausted = true;
                    break 'levels;
                }
                index.insert(y);
                let mut word = words[i].clone();
                word.push(r);
                points.push(y);
                words.push(word);
                next.push(points.len() - 1);
            }
        }
        if next.is_empty() {
            stabilized = true;
            break;
        }
        frontier = next;
    }

    Ok(HullSample {
        base: x,
        order_k,
        depth,
        dedup_eps,
        points,
        words,
        budget_exhausted,
        stabilized,
    })
}

/// Symmetric Hausdorff distance between two finite point sets.
pub fn hausdorff_distance(space: SpaceKind, a: &[f64], b: &[f64]) -> f64 {
    let directed = |from: &[f64], to: &[f64]| {
        from.iter()
            .map(|&p| to.iter().map(|&q| space.metric(p, q)).fold(f64::INFINITY, f64::min))
            .fold(0.0_f64, f64::max)
    };
    directed(a, b).max(directed(b, a))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::flow::omega;
    use crate::homeo::Homeomorphism;

    fn square_sqrt() -> MapFamily {
        MapFamily::builder("sq", SpaceKind::UnitInterval, |n| {
            if n % 2 == 1 {
                Homeomorphism::power(2, 1).unwrap()
            } else {
                Homeomorphism::power(1, 2).unwrap()
            }
        })
        .commutative(true)
        .build()
    }

    #[test]
    fn fixed_point_hull_is_itself() {
        let h = hull_sample(&square_sqrt(), 0.0, 3, 5, 1e-9, 100).unwrap();
        assert_eq!(h.points, vec![0.0]);
        assert!(h.stabilized);
        assert!(!h.budget_exhausted);
    }

    #[test]
    fn words_replay_to_points() {
        let fam = square_sqrt();
        let h = hull_sample(&fam, 0.5, 2, 3, 1e-9, 1000).unwrap();
        for (p, word) in h.points.iter().zip(&h.words) {
            assert!(word.len() <= 3);
            let y = word.iter().try_fold(0.5, |acc, &r| omega(&fam, r, acc)).unwrap();
            assert_eq!(y.to_bits(), p.to_bits());
        }
    }

    #[test]
    fn budget_is_reported() {
        let h = hull_sample(&square_sqrt(), 0.5, 1, 20, 1e-9, 4).unwrap();
        assert!(h.budget_exhausted);
        assert_eq!(h.len(), 4);
    }

    #[test]
    fn dedup_respects_circle_wrap() {
        let mut idx = PointIndex::new(SpaceKind::Circle, 1e-3);
        idx.insert(0.9999);
        assert!(idx.has_near(0.0002));
        assert!(!idx.has_near(0.002));
        idx.insert(0.0);
        assert!(idx.has_near(0.99995));
    }

    #[test]
    fn invalid_arguments() {
        assert!(hull_sample(&square_sqrt(), 0.5, 0, 1, 1e-9, 10).is_err());
        assert!(hull_sample(&square_sqrt(), 0.5, 1, 1, 0.0, 10).is_err());
        assert!(hull_sample(&square_sqrt(), 1.5, 1, 1, 1e-9, 10).is_err());
    }

    #[test]
    fn hausdorff() {
        let s = SpaceKind::UnitInterval;
        assert_eq!(hausdorff_distance(s, &[0.0, 1.0], &[0.0, 1.0]), 0.0);
        assert_eq!(hausdorff_distance(s, &[0.0], &[0.0, 0.5]), 0.5);
    }
}
