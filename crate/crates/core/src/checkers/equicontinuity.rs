//! Equicontinuity moduli, proximality, Li-Yorke pairs, and sensitivity.

use crate::error::{Error, Result};
use crate::family::MapFamily;
use crate::flow::OrbitWindow;
use crate::hull::{hull_sample, DEFAULT_DEDUP_EPS};
use crate::report::{fmt_real, Property, PropertyReport, Value, Verdict, Witness};
use crate::space::SpaceKind;

use super::{ball_samples, sampled_diameter, times_by_magnitude, Sampling, MODULUS_HALVINGS};

fn pair_partner(space: SpaceKind, x: f64, offset: f64) -> Option<f64> {
    let y = x + offset;
    match space {
        SpaceKind::UnitInterval => (0.0..=1.0).contains(&y).then_some(y),
        SpaceKind::Circle => Some(space.normalize(y)),
    }
}

/// Largest dyadic `δ = eps / 2^j` (`j ≤ 20`) such that every sampled pair
/// closer than `δ` stays closer than `eps` for all `|n| ≤ N`, evaluated at
/// `N, 2N, 4N`. `δ = 0` means no candidate worked.
///
/// Pairs are `(x, x ± 0.99 · eps / 2^j)` for `x` on a `pair_grid` grid, so
/// the same samples back every candidate and the modulus is monotone in
/// the window.
pub fn equicontinuity_modulus(
    family: &MapFamily,
    eps: f64,
    n: u64,
    pair_grid: usize,
) -> Result<PropertyReport> {
    if !(eps > 0.0) {
        return Err(Error::InvalidArgument("eps must be positive".into()));
    }
    if pair_grid == 0 {
        return Err(Error::InvalidArgument("pair grid must be non-empty".into()));
    }
    let space = family.space();
    let windows = [n, 2 * n, 4 * n];
    let far = 4 * n;
    let bases = space.grid(pair_grid);
    let base_orbits = bases
        .iter()
        .map(|&x| OrbitWindow::compute(family, x, far))
        .collect::<Result<Vec<_>>>()?;

    let mut finest_failure: [Option<u32>; 3] = [None; 3];
    let mut witness: Option<Witness> = None;
    for j in (0..=MODULUS_HALVINGS).rev() {
        if finest_failure.iter().all(Option::is_some) {
            break;
        }
        let offset = 0.99 * eps / f64::from(1u32 << j);
        for (&x, wx) in bases.iter().zip(&base_orbits) {
            for sign in [1.0, -1.0] {
                let Some(y) = pair_partner(space, x, sign * offset) else { continue };
                let wy = OrbitWindow::compute(family, y, far)?;
                let mut worst = (0.0_f64, 0_i64);
                let mut w_idx = 0;
                for t in times_by_magnitude(far) {
                    let d = space.metric(wx.at(t), wy.at(t));
                    if d > worst.0 {
                        worst = (d, t);
                    }
                    // Record at the last time of each window.
                    while w_idx < 3 && t == -(windows[w_idx] as i64) {
                        if worst.0 >= eps && finest_failure[w_idx].is_none() {
                            finest_failure[w_idx] = Some(j);
                            if w_idx == 0 || witness.is_none() {
                                witness = Some(Witness::pair(
                                    x,
                                    y,
                                    worst.1,
                                    worst.0,
                                    format!("d(x,y) = {}", fmt_real(space.metric(x, y))),
                                ));
                            }
                        }
                        w_idx += 1;
                    }
                }
            }
        }
    }
    let deltas: Vec<f64> = finest_failure
        .iter()
        .map(|f| match f {
            None => eps,
            Some(j) if *j >= MODULUS_HALVINGS => 0.0,
            Some(j) => eps / f64::from(1u32 << (j + 1)),
        })
        .collect();
    let stable = deltas[0] == deltas[2] && deltas[2] > 0.0;
    let mut report = PropertyReport::new(
        Property::Equicontinuity,
        if stable { Verdict::EvidenceFor } else { Verdict::EvidenceAgainst },
    )
    .real_param("eps", eps)
    .param("N", n)
    .param("grid", pair_grid)
    .metric("delta", Value::Real(deltas[0]))
    .metric("delta_trend", Value::Reals(deltas.clone()))
    .metric("windows", Value::Ints(windows.iter().map(|&w| w as i64).collect()));
    if let Some(w) = witness {
        report = report.witness(w);
    }
    Ok(report)
}

/// Extremes of `d(ω_n x, ω_n y)` over `|n| ≤ N`. Ties go to the least
/// `|n|`, positive first.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ProximalStats {
    pub min: f64,
    pub argmin: i64,
    pub max: f64,
    pub argmax: i64,
}

pub fn proximal_liminf(family: &MapFamily, x: f64, y: f64, n: u64) -> Result<ProximalStats> {
    let space = family.space();
    let wx = OrbitWindow::compute(family, x, n)?;
    let wy = OrbitWindow::compute(family, y, n)?;
    let d0 = space.metric(x, y);
    let mut stats = ProximalStats { min: d0, argmin: 0, max: d0, argmax: 0 };
    for t in times_by_magnitude(n) {
        let d = space.metric(wx.at(t), wy.at(t));
        if d < stats.min {
            stats.min = d;
            stats.argmin = t;
        }
        if d > stats.max {
            stats.max = d;
            stats.argmax = t;
        }
    }
    Ok(stats)
}

fn proximal_report(property: Property, x: f64, y: f64, n: u64, s: &ProximalStats) -> PropertyReport {
    PropertyReport::new(property, Verdict::EvidenceFor)
        .real_param("x", x)
        .real_param("y", y)
        .param("N", n)
        .metric("min_distance", Value::Real(s.min))
        .metric("argmin", Value::Int(s.argmin))
        .metric("max_distance", Value::Real(s.max))
        .metric("argmax", Value::Int(s.argmax))
        .witness(Witness::pair(x, y, s.argmin, s.min, "closest approach"))
        .witness(Witness::pair(x, y, s.argmax, s.max, "widest separation"))
}

/// Proximality evidence: the minimum distance falls below the asymptotic
/// tolerance.
pub fn proximality_report(family: &MapFamily, x: f64, y: f64, n: u64, tol: f64) -> Result<PropertyReport> {
    let s = proximal_liminf(family, x, y, n)?;
    let verdict = if s.min < tol { Verdict::EvidenceFor } else { Verdict::EvidenceAgainst };
    Ok(PropertyReport { verdict, ..proximal_report(Property::Proximality, x, y, n, &s) }
        .real_param("tol", tol))
}

/// A pair is Li-Yorke on the window when it comes closer than `low_tol`
/// and also separates beyond `high_tol`.
pub fn li_yorke_classify(
    family: &MapFamily,
    x: f64,
    y: f64,
    n: u64,
    low_tol: f64,
    high_tol: f64,
) -> Result<PropertyReport> {
    if !(low_tol < high_tol) {
        return Err(Error::InvalidArgument(format!(
            "low_tol ({low_tol}) must be below high_tol ({high_tol})"
        )));
    }
    let s = proximal_liminf(family, x, y, n)?;
    let verdict = if s.min < low_tol && s.max > high_tol {
        Verdict::EvidenceFor
    } else {
        Verdict::EvidenceAgainst
    };
    Ok(PropertyReport { verdict, ..proximal_report(Property::LiYorke, x, y, n, &s) }
        .real_param("low_tol", low_tol)
        .real_param("high_tol", high_tol))
}

#[derive(Debug, Clone, PartialEq)]
pub struct SensitivityParams {
    pub x: f64,
    pub delta: f64,
    /// Decreasing ball radii.
    pub radii: Vec<f64>,
    pub samples: usize,
    pub n: u64,
    pub sampling: Sampling,
}

/// For every radius, looks for `|k| ≤ N` stretching the sampled ball past
/// `delta`.
pub fn sensitivity_at_point(family: &MapFamily, p: &SensitivityParams) -> Result<PropertyReport> {
    if p.radii.is_empty() || p.radii.iter().any(|&r| !(r > 0.0)) {
        return Err(Error::InvalidArgument("radii must be positive and non-empty".into()));
    }
    if p.samples < 2 {
        return Err(Error::InvalidArgument("at least 2 samples per ball".into()));
    }
    let space = family.space();
    let mut witnesses = Vec::new();
    let mut best_diameters = Vec::new();
    let mut witnessed = 0;
    for &radius in &p.radii {
        let pts = ball_samples(space, p.x, radius, p.samples, p.sampling);
        let orbits = pts
            .iter()
            .map(|&s| OrbitWindow::compute(family, s, p.n))
            .collect::<Result<Vec<_>>>()?;
        let mut best = (0.0_f64, 0_i64, 0, 0);
        let mut image = vec![0.0; pts.len()];
        for k in times_by_magnitude(p.n) {
            for (slot, orbit) in image.iter_mut().zip(&orbits) {
                *slot = orbit.at(k);
            }
            let (d, i, j) = sampled_diameter(space, &image);
            if d > best.0 {
                best = (d, k, i, j);
            }
            if d > p.delta {
                break;
            }
        }
        best_diameters.push(best.0);
        if best.0 > p.delta {
            witnessed += 1;
            witnesses.push(Witness::pair(
                pts[best.2],
                pts[best.3],
                best.1,
                best.0,
                format!("radius {}", fmt_real(radius)),
            ));
        }
    }
    let verdict = if witnessed == p.radii.len() { Verdict::EvidenceFor } else { Verdict::EvidenceAgainst };
    let mut report = PropertyReport::new(Property::Sensitivity, verdict)
        .real_param("x", p.x)
        .real_param("delta", p.delta)
        .param("radii", p.radii.iter().map(|&r| fmt_real(r)).collect::<Vec<_>>().join(","))
        .param("samples", p.samples)
        .param("N", p.n)
        .metric("max_sampled_diameters", Value::Reals(best_diameters))
        .metric("radii_witnessed", Value::Int(witnessed as i64));
    if let Sampling::Random { seed } = p.sampling {
        report = report.param("seed", seed);
    }
    report.witnesses = witnesses;
    Ok(report)
}

#[derive(Debug, Clone, PartialEq)]
pub struct DichotomyParams {
    pub eps: f64,
    pub delta: f64,
    pub grid: usize,
    pub order_k: u64,
    pub depth: u64,
    pub n: u64,
    pub radii: Vec<f64>,
    pub samples: usize,
    pub sampling: Sampling,
    pub max_points: usize,
    /// Hull points checked per sensitive point.
    pub propagation_samples: usize,
}

/// Equicontinuity evidence, the grid points that look sensitive, and
/// whether sensitivity carries over to sampled hull points of each.
pub fn dichotomy_scan(family: &MapFamily, p: &DichotomyParams) -> Result<PropertyReport> {
    if !family.declared_commutative() {
        return Err(Error::Precondition(format!(
            "`{}` is not a commutative family",
            family.name()
        )));
    }
    let equi = equicontinuity_modulus(family, p.eps, p.n, p.grid)?;
    let sens = |x: f64| {
        sensitivity_at_point(
            family,
            &SensitivityParams {
                x,
                delta: p.delta,
                radii: p.radii.clone(),
                samples: p.samples,
                n: p.n,
                sampling: p.sampling,
            },
        )
    };
    let mut sensitive = Vec::new();
    let mut witnesses = Vec::new();
    for x in family.space().grid(p.grid) {
        let r = sens(x)?;
        if r.verdict == Verdict::EvidenceFor {
            sensitive.push(x);
            witnesses.extend(r.witnesses.into_iter().take(1));
        }
    }
    let mut checked = 0;
    let mut failed = Vec::new();
    for &x in &sensitive {
        let hull = hull_sample(family, x, p.order_k, p.depth, DEFAULT_DEDUP_EPS, p.max_points)?;
        for &y in hull.points.iter().skip(1).take(p.propagation_samples) {
            checked += 1;
            if sens(y)?.verdict != Verdict::EvidenceFor {
                failed.push(y);
            }
        }
    }
    let propagation = failed.is_empty();
    let holds = equi.verdict == Verdict::EvidenceFor || (!sensitive.is_empty() && propagation);
    let mut report = PropertyReport::new(
        Property::Dichotomy,
        if holds { Verdict::EvidenceFor } else { Verdict::EvidenceAgainst },
    )
    .real_param("eps", p.eps)
    .real_param("delta", p.delta)
    .param("grid", p.grid)
    .param("order_k", p.order_k)
    .param("depth", p.depth)
    .param("N", p.n)
    .metric("equicontinuity", Value::Verdict(equi.verdict))
    .metric("delta_estimate", equi.metrics.get("delta").cloned().unwrap_or(Value::Real(0.0)))
    .metric("sensitive_points", Value::Reals(sensitive))
    .metric("propagation_checked", Value::Int(checked))
    .metric("propagation_failures", Value::Reals(failed))
    .metric("propagation_holds", Value::Bool(propagation));
    report.witnesses = witnesses;
    Ok(report)
}
