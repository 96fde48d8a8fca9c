//! Hull-based properties: minimality, periodic hulls, and hull closures.

use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::exact::{
    exact_density_gap, exact_hull_displacements, format_rational, RationalAngle,
};
use crate::family::{commutativity_audit, MapFamily};
use crate::flow::OrbitWindow;
use crate::hull::{hausdorff_distance, hull_sample, HullSample, DEFAULT_DEDUP_EPS};
use crate::report::{fmt_real, Property, PropertyReport, Value, Verdict, Witness};
use crate::space::SpaceKind;

use super::periodicity::periodicity_deviation;

/// Maps and grid used to confirm a declared commutative family really is.
const AUDIT_MAX_INDEX: u64 = 8;
const AUDIT_GRID: usize = 16;

#[derive(Debug, Clone, PartialEq)]
pub struct MinimalityParams {
    /// Ball radius, kept exact so rotation families never round it.
    pub eps: BigRational,
    pub order_cap: u64,
    pub depth: u64,
    /// Number of base points; `None` uses a uniform net at spacing `eps/2`.
    pub grid: Option<usize>,
    pub max_points: usize,
}

fn eps_to_f64(eps: &BigRational) -> Result<f64> {
    match eps.to_f64() {
        Some(e) if e > 0.0 => Ok(e),
        _ => Err(Error::InvalidArgument(format!(
            "eps must be positive, got {}",
            format_rational(eps)
        ))),
    }
}

fn base_points(space: SpaceKind, eps: f64, grid: Option<usize>) -> Result<Vec<f64>> {
    let half = eps / 2.0;
    match grid {
        None => Ok(space.net(half)),
        Some(g) => {
            let spacing = match space {
                SpaceKind::Circle => 1.0 / g as f64,
                SpaceKind::UnitInterval => 1.0 / g.saturating_sub(1).max(1) as f64,
            };
            if g < 2 || spacing > half {
                return Err(Error::InvalidArgument(format!(
                    "a grid of {g} points does not cover the space at spacing {}",
                    fmt_real(half)
                )));
            }
            Ok(space.grid(g))
        }
    }
}

/// Index and distance of the hull point nearest `c`.
fn nearest(hull: &HullSample, space: SpaceKind, c: f64) -> (usize, f64) {
    hull.points
        .iter()
        .enumerate()
        .map(|(i, &p)| (i, space.metric(p, c)))
        .fold((0, f64::INFINITY), |best, cur| if cur.1 < best.1 { cur } else { best })
}

fn miss_witness(hull: &HullSample, space: SpaceKind, c: f64, note: &str) -> Witness {
    let (i, d) = nearest(hull, space, c);
    Witness::word(hull.base, c, hull.words[i].clone(), d, note)
}

/// Checks directly that every hull `O_H^k(x)`, `x ∈ grid`, meets every ball
/// `B(c, eps)`, `c ∈ centers`. Returns the first miss.
///
/// Rotation families are checked in exact arithmetic; the witness of a miss
/// is still a float hull word so that it can be replayed.
pub fn verify_minimality_by_enumeration(
    family: &MapFamily,
    eps: &BigRational,
    order_k: u64,
    depth: u64,
    grid: &[f64],
    centers: &[f64],
    max_points: usize,
) -> Result<Option<Witness>> {
    let eps_f = eps_to_f64(eps)?;
    let space = family.space();
    let to_angle = |v: f64| {
        RationalAngle::from_f64(v)
            .ok_or_else(|| Error::InvalidArgument(format!("{v} is not a finite point")))
    };
    let exact_hull = match family.exact() {
        Some(exact) => {
            let h = exact_hull_displacements(exact, order_k, depth, max_points)?;
            if h.budget_exhausted {
                return Err(Error::Budget(format!(
                    "exact hull of order {order_k} exceeds {max_points} points"
                )));
            }
            Some(h)
        }
        None => None,
    };
    for &x in grid {
        let mut float_hull = None;
        let mut hull = || -> Result<HullSample> {
            if float_hull.is_none() {
                float_hull =
                    Some(hull_sample(family, x, order_k, depth, DEFAULT_DEDUP_EPS, max_points)?);
            }
            Ok(float_hull.clone().expect("just filled"))
        };
        for &c in centers {
            let meets = match &exact_hull {
                Some(h) => {
                    let (xa, ca) = (to_angle(x)?, to_angle(c)?);
                    h.displacements.iter().any(|d| &xa.add(d).distance(&ca) < eps)
                }
                None => hull()?.distance_to(space, c) < eps_f,
            };
            if !meets {
                return Ok(Some(miss_witness(&hull()?, space, c, "hull misses the ball")));
            }
        }
    }
    Ok(None)
}

/// Searches for the least `k ≤ order_cap` such that every base-point hull
/// `O_H^k(x)` meets every `eps`-ball centred on an `eps/2`-net.
///
/// Rotation families with an exact view are decided exactly: once the hull
/// displacements leave no gap of `2·eps` the property holds for every point
/// and the answer is `Certified`. A closed displacement group with a wider
/// gap at `order_cap` is `Refuted`. Other families yield `EvidenceFor`, or
/// `Refuted` when a hull stabilises at `order_cap` without meeting a ball.
pub fn minimality_certificate(family: &MapFamily, p: &MinimalityParams) -> Result<PropertyReport> {
    let eps_f = eps_to_f64(&p.eps)?;
    if p.order_cap == 0 || p.depth == 0 {
        return Err(Error::InvalidArgument("order_cap and depth must be at least 1".into()));
    }
    let space = family.space();
    let grid = base_points(space, eps_f, p.grid)?;
    let centers = space.net(eps_f / 2.0);
    let mut report = PropertyReport::new(Property::Minimality, Verdict::InconclusiveBudget)
        .param("eps", format_rational(&p.eps))
        .param("order_cap", p.order_cap)
        .param("depth", p.depth)
        .param("max_points", p.max_points)
        .metric("grid_points", Value::Int(grid.len() as i64))
        .metric("ball_centers", Value::Int(centers.len() as i64));
    if let Some(g) = p.grid {
        report = report.param("grid", g);
    }
    match family.exact() {
        Some(_) => exact_route(family, p, &grid, &centers, report),
        None => float_route(family, p, eps_f, &grid, &centers, report),
    }
}

fn exact_route(
    family: &MapFamily,
    p: &MinimalityParams,
    grid: &[f64],
    centers: &[f64],
    report: PropertyReport,
) -> Result<PropertyReport> {
    let exact = family.exact().expect("checked by caller");
    let two_eps = &p.eps + &p.eps;
    let budget = |report: PropertyReport, k: u64, why: String| {
        PropertyReport { verdict: Verdict::InconclusiveBudget, ..report }
            .metric("order_k", Value::Int(k as i64))
            .metric("budget", Value::Text(why))
    };
    for k in 1..=p.order_cap {
        let hull = match exact_hull_displacements(exact, k, p.depth, p.max_points) {
            Ok(h) => h,
            Err(Error::Budget(why)) => return Ok(budget(report, k, why)),
            Err(e) => return Err(e),
        };
        if hull.budget_exhausted {
            return Ok(budget(report, k, format!("more than {} displacements", p.max_points)));
        }
        let gap = exact_density_gap(&hull.displacements)?;
        let report = report
            .clone()
            .metric("order_k", Value::Int(k as i64))
            .metric("hull_size", Value::Int(hull.displacements.len() as i64))
            .metric("exact_gap", Value::Text(format_rational(&gap)));
        if gap < two_eps {
            let miss = match verify_minimality_by_enumeration(
                family, &p.eps, k, p.depth, grid, centers, p.max_points,
            ) {
                Ok(m) => m,
                Err(Error::Budget(why)) => return Ok(budget(report, k, why)),
                Err(e) => return Err(e),
            };
            if let Some(w) = miss {
                return Err(Error::Construction(format!(
                    "exact gap below 2·eps but enumeration missed a ball: {w:?}"
                )));
            }
            return Ok(PropertyReport { verdict: Verdict::Certified, ..report }
                .metric("enumeration_verified", Value::Bool(true)));
        }
        if k == p.order_cap {
            if !hull.closed {
                return Ok(budget(report, k, format!("depth {} leaves the hull open", p.depth)));
            }
            // The midpoint of the widest gap is at least eps from every hull
            // point of any x; report it for the first base point.
            let x = grid[0];
            let (lo, width) = widest_gap(&hull.displacements);
            let mid = RationalAngle::from_f64(x)
                .expect("grid points are finite")
                .add(&RationalAngle::new(lo + width / BigRational::from_integer(2.into())));
            let fh = hull_sample(family, x, k, p.depth, DEFAULT_DEDUP_EPS, p.max_points)?;
            let w = miss_witness(&fh, family.space(), mid.to_f64(), "closed hull misses the ball");
            return Ok(PropertyReport { verdict: Verdict::Refuted, ..report }.witness(w));
        }
    }
    unreachable!("order_cap >= 1")
}

/// Start and width of the widest circular gap after each displacement.
fn widest_gap(
    set: &std::collections::BTreeSet<RationalAngle>,
) -> (BigRational, BigRational) {
    let pts: Vec<&RationalAngle> = set.iter().collect();
    let mut best = (BigRational::zero(), BigRational::zero());
    for (i, a) in pts.iter().enumerate() {
        let width = match pts.get(i + 1) {
            Some(b) => b.value() - a.value(),
            None => BigRational::from_integer(1.into()) - a.value() + pts[0].value(),
        };
        if width > best.1 {
            best = (a.value().clone(), width);
        }
    }
    best
}

fn float_route(
    family: &MapFamily,
    p: &MinimalityParams,
    eps: f64,
    grid: &[f64],
    centers: &[f64],
    report: PropertyReport,
) -> Result<PropertyReport> {
    let space = family.space();
    for k in 1..=p.order_cap {
        let last = k == p.order_cap;
        let mut all_meet = true;
        let mut exhausted = false;
        'grid: for &x in grid {
            let hull = hull_sample(family, x, k, p.depth, DEFAULT_DEDUP_EPS, p.max_points)?;
            exhausted |= hull.budget_exhausted;
            for &c in centers {
                if hull.distance_to(space, c) < eps {
                    continue;
                }
                all_meet = false;
                if !last {
                    break 'grid;
                }
                if hull.stabilized && !hull.budget_exhausted {
                    // Report the ball farthest from the hull.
                    let far = centers
                        .iter()
                        .copied()
                        .max_by(|a, b| {
                            hull.distance_to(space, *a).total_cmp(&hull.distance_to(space, *b))
                        })
                        .unwrap_or(c);
                    let w = miss_witness(&hull, space, far, "stabilised hull misses the ball");
                    return Ok(PropertyReport { verdict: Verdict::Refuted, ..report }
                        .metric("order_k", Value::Int(k as i64))
                        .metric("hull_size", Value::Int(hull.len() as i64))
                        .witness(w));
                }
            }
        }
        if all_meet {
            return Ok(PropertyReport { verdict: Verdict::EvidenceFor, ..report }
                .metric("order_k", Value::Int(k as i64))
                .metric("budget_exhausted", Value::Bool(exhausted)));
        }
        if last {
            return Ok(report
                .metric("order_k", Value::Int(k as i64))
                .metric("budget_exhausted", Value::Bool(exhausted)));
        }
    }
    unreachable!("order_cap >= 1")
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HullPeriodicityParams {
    pub x: f64,
    pub r: u64,
    pub order_k: u64,
    pub depth: u64,
    pub horizon: u64,
    pub tol: f64,
    pub max_points: usize,
}

/// For a commutative family and an `r`-periodic `x`, checks that every
/// sampled hull point is `r`-periodic too.
pub fn hull_periodicity_property(
    family: &MapFamily,
    p: &HullPeriodicityParams,
) -> Result<PropertyReport> {
    if !family.declared_commutative() {
        return Err(Error::Precondition(format!(
            "`{}` is not a commutative family",
            family.name()
        )));
    }
    let audit = commutativity_audit(family, AUDIT_MAX_INDEX, AUDIT_GRID)?;
    if !audit.passes {
        return Err(Error::Precondition(format!(
            "`{}` fails the commutativity audit (worst distance {})",
            family.name(),
            fmt_real(audit.worst_distance)
        )));
    }
    let (_, failure) = periodicity_deviation(family, p.x, p.r, p.horizon, p.tol)?;
    if let Some((n, d)) = failure {
        return Err(Error::Precondition(format!(
            "x = {} is not {}-periodic: d(ω_{n}(x), x) = {}",
            p.x,
            p.r,
            fmt_real(d)
        )));
    }
    let hull = hull_sample(family, p.x, p.order_k, p.depth, DEFAULT_DEDUP_EPS, p.max_points)?;
    let mut worst = 0.0_f64;
    let mut witnesses = Vec::new();
    for &y in &hull.points {
        let (dev, failure) = periodicity_deviation(family, y, p.r, p.horizon, p.tol)?;
        worst = worst.max(dev);
        if let Some((n, d)) = failure {
            witnesses.push(Witness::returning(y, n, d, "hull point is not periodic"));
        }
    }
    let verdict = if witnesses.is_empty() { Verdict::EvidenceFor } else { Verdict::Refuted };
    let mut report = PropertyReport::new(Property::HullPeriodicity, verdict)
        .real_param("x", p.x)
        .param("r", p.r)
        .param("order_k", p.order_k)
        .param("depth", p.depth)
        .param("horizon", p.horizon)
        .real_param("tol", p.tol)
        .metric("hull_points", Value::Int(hull.len() as i64))
        .metric("failing_points", Value::Int(witnesses.len() as i64))
        .metric("max_deviation", Value::Real(worst))
        .metric("budget_exhausted", Value::Bool(hull.budget_exhausted));
    report.witnesses = witnesses;
    Ok(report)
}

/// Hausdorff distance between the truncated hulls of `x` and `y`.
pub fn hull_hausdorff(
    family: &MapFamily,
    x: f64,
    y: f64,
    order_k: u64,
    depth: u64,
    max_points: usize,
) -> Result<f64> {
    let hx = hull_sample(family, x, order_k, depth, DEFAULT_DEDUP_EPS, max_points)?;
    let hy = hull_sample(family, y, order_k, depth, DEFAULT_DEDUP_EPS, max_points)?;
    Ok(hausdorff_distance(family.space(), &hx.points, &hy.points))
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HullClosureParams {
    pub x: f64,
    pub eps: f64,
    pub n: u64,
    pub order_k: u64,
    pub depth: u64,
    /// Orbit points `ω_t(x)` compared, by increasing `|t|`.
    pub samples: usize,
    /// Base grid of the equicontinuity precondition.
    pub equi_grid: usize,
    pub max_points: usize,
}

/// For an equicontinuous family, compares the hull of `x` with the hulls of
/// orbit points `ω_t(x)`; all must lie within `eps` in Hausdorff distance.
pub fn hull_closure_equality(family: &MapFamily, p: &HullClosureParams) -> Result<PropertyReport> {
    let equi = super::equicontinuity_modulus(family, p.eps, p.n, p.equi_grid)?;
    if equi.verdict != Verdict::EvidenceFor {
        return Err(Error::Precondition(format!(
            "`{}` shows no equicontinuity evidence at eps = {}",
            family.name(),
            fmt_real(p.eps)
        )));
    }
    let space = family.space();
    let hx = hull_sample(family, p.x, p.order_k, p.depth, DEFAULT_DEDUP_EPS, p.max_points)?;
    let orbit = OrbitWindow::compute(family, p.x, p.n)?;
    let mut worst = (0.0_f64, 0_i64);
    let mut compared = 0;
    for t in orbit.times_by_magnitude(p.n).filter(|&t| t != 0).take(p.samples) {
        let hy = hull_sample(family, orbit.at(t), p.order_k, p.depth, DEFAULT_DEDUP_EPS, p.max_points)?;
        let h = hausdorff_distance(space, &hx.points, &hy.points);
        compared += 1;
        if h > worst.0 {
            worst = (h, t);
        }
    }
    let verdict = if worst.0 <= p.eps { Verdict::EvidenceFor } else { Verdict::EvidenceAgainst };
    Ok(PropertyReport::new(Property::HullClosureEquality, verdict)
        .real_param("x", p.x)
        .real_param("eps", p.eps)
        .param("N", p.n)
        .param("order_k", p.order_k)
        .param("depth", p.depth)
        .param("samples", p.samples)
        .metric("orbit_points_compared", Value::Int(compared))
        .metric("max_hausdorff", Value::Real(worst.0))
        .metric("worst_time", Value::Int(worst.1))
        .metric("hull_points", Value::Int(hx.len() as i64)))
}
