//! Finite-scale checkers for the recurrence, stability, and density
//! properties of a non-autonomous system.
//!
//! Checkers never claim infinite-horizon truth. Exact rotation structure
//! yields `Certified`/`Refuted`; everything else is reported as evidence at
//! the stated window, grid, and tolerances.

mod equicontinuity;
mod minimality;
mod periodicity;
mod recurrence;
mod transitivity;

pub use equicontinuity::{
    dichotomy_scan, equicontinuity_modulus, li_yorke_classify, proximal_liminf,
    proximality_report, sensitivity_at_point, DichotomyParams, ProximalStats, SensitivityParams,
};
pub use minimality::{
    hull_closure_equality, hull_hausdorff, hull_periodicity_property, minimality_certificate,
    verify_minimality_by_enumeration, HullClosureParams, HullPeriodicityParams, MinimalityParams,
};
pub use periodicity::{exact_periodicity_report, periodicity_check, periodicity_deviation};
pub use recurrence::{
    almost_periodicity_report, ap_propagation_check, return_time_set, return_times_report,
    uniform_ap_report,
    ApPropagationParams, ReturnTimeSet,
};
pub use transitivity::{orbit_density, r_transitivity_check, transitivity_scan, TransitivityParams};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::Result;
use crate::family::{commutativity_audit, MapFamily};
use crate::report::{fmt_real, Property, PropertyReport, Value, Verdict};
use crate::space::{radical_inverse, SpaceKind};

/// Flow tolerance for "returns exactly" comparisons.
pub const DEFAULT_TOL: f64 = 1e-9;
/// Threshold for liminf-style evidence.
pub const ASYMPTOTIC_TOL: f64 = 1e-3;
pub const LI_YORKE_LOW_TOL: f64 = 1e-3;
pub const LI_YORKE_HIGH_TOL: f64 = 0.3;
pub const BALL_SAMPLES: usize = 16;
pub const DEFAULT_RADII: [f64; 2] = [0.1, 0.01];
/// Number of halvings tried when searching for an equicontinuity modulus.
pub const MODULUS_HALVINGS: u32 = 20;

/// Sensitivity threshold `diam(X) / 4`.
pub fn default_delta(space: SpaceKind) -> f64 {
    space.diameter() / 4.0
}

/// Commutativity audit of `f_1, …, f_m` on a grid, as a report.
pub fn commutativity_report(family: &MapFamily, max_index: u64, grid: usize) -> Result<PropertyReport> {
    let audit = commutativity_audit(family, max_index, grid)?;
    let verdict = if audit.passes { Verdict::EvidenceFor } else { Verdict::EvidenceAgainst };
    let mut report = PropertyReport::new(Property::Commutativity, verdict)
        .param("max_index", max_index)
        .param("grid", grid)
        .metric("worst_distance", Value::Real(audit.worst_distance))
        .metric("declared_commutative", Value::Bool(family.declared_commutative()));
    if let Some((i, j, x)) = audit.worst {
        report = report.metric("worst_pair", Value::Ints(vec![i as i64, j as i64]))
            .metric("worst_point", Value::Text(fmt_real(x)));
    }
    Ok(report)
}

/// How points inside a ball are chosen.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Sampling {
    /// Center, two near-boundary points, and a van der Corput fill.
    #[default]
    LowDiscrepancy,
    /// Center, two near-boundary points, and seeded uniform draws.
    Random { seed: u64 },
}

const BOUNDARY_SHRINK: f64 = 1.0 - 1.0 / (1u64 << 20) as f64;

/// Sample points of the open ball `B(center, radius)` intersected with the
/// space; at most `count` of them.
pub fn ball_samples(
    space: SpaceKind,
    center: f64,
    radius: f64,
    count: usize,
    sampling: Sampling,
) -> Vec<f64> {
    let reach = radius * BOUNDARY_SHRINK;
    let mut offsets = vec![0.0, -reach, reach];
    let fill = count.saturating_sub(offsets.len());
    match sampling {
        Sampling::LowDiscrepancy => {
            offsets.extend((1..=fill as u64).map(|i| (2.0 * radical_inverse(i, 2) - 1.0) * reach));
        }
        Sampling::Random { seed } => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed ^ center.to_bits());
            offsets.extend((0..fill).map(|_| rng.random_range(-reach..reach)));
        }
    }
    offsets.truncate(count.max(1));
    let mut out = Vec::with_capacity(offsets.len());
    for off in offsets {
        let p = center + off;
        let p = match space {
            SpaceKind::UnitInterval if !(0.0..=1.0).contains(&p) => continue,
            SpaceKind::UnitInterval => p,
            SpaceKind::Circle => space.normalize(p),
        };
        out.push(p);
    }
    out
}

/// Largest pairwise distance and the pair attaining it.
pub(crate) fn sampled_diameter(space: SpaceKind, pts: &[f64]) -> (f64, usize, usize) {
    let mut best = (0.0, 0, 0);
    for i in 0..pts.len() {
        for j in i + 1..pts.len() {
            let d = space.metric(pts[i], pts[j]);
            if d > best.0 {
                best = (d, i, j);
            }
        }
    }
    best
}

/// Times `0, 1, -1, 2, -2, …, limit, -limit`.
pub(crate) fn times_by_magnitude(limit: u64) -> impl Iterator<Item = i64> {
    let limit = limit as i64;
    std::iter::once(0).chain((1..=limit).flat_map(|k| [k, -k]))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ball_samples_stay_in_ball() {
        for sampling in [Sampling::LowDiscrepancy, Sampling::Random { seed: 7 }] {
            let pts = ball_samples(SpaceKind::Circle, 0.01, 0.05, 16, sampling);
            assert_eq!(pts.len(), 16);
            assert!(pts.iter().all(|&p| SpaceKind::Circle.metric(p, 0.01) < 0.05));
            assert_eq!(pts[0], 0.01);
        }
        let pts = ball_samples(SpaceKind::UnitInterval, 0.0, 0.1, 16, Sampling::LowDiscrepancy);
        assert!(pts.iter().all(|&p| (0.0..0.1).contains(&p)));
        assert!(pts.len() < 16);
    }

    #[test]
    fn diameter_of_samples() {
        let (d, i, j) = sampled_diameter(SpaceKind::UnitInterval, &[0.2, 0.9, 0.5]);
        assert!((d - 0.7).abs() < 1e-15);
        assert_eq!((i, j), (0, 1));
    }

    #[test]
    fn default_delta_is_quarter_diameter() {
        assert_eq!(default_delta(SpaceKind::UnitInterval), 0.25);
        assert_eq!(default_delta(SpaceKind::Circle), 0.125);
    }
}
