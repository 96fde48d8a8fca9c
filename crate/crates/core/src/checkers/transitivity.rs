//! Dense orbits and open-set transitivity.

use crate::error::{Error, Result};
use crate::exact::exact_periodicity;
use crate::family::{block_family, MapFamily};
use crate::flow::OrbitWindow;
use crate::report::{Property, PropertyReport, Value, Verdict, Witness};

use super::{ball_samples, Sampling, BALL_SAMPLES};

/// For each net center, the closest orbit point: `(distance, time)`.
fn net_coverage(family: &MapFamily, window: &OrbitWindow, centers: &[f64]) -> Vec<(f64, i64)> {
    let space = family.space();
    let n = window.radius();
    centers
        .iter()
        .map(|&c| {
            let mut best = (f64::INFINITY, 0);
            for t in super::times_by_magnitude(n) {
                let d = space.metric(window.at(t), c);
                if d < best.0 {
                    best = (d, t);
                }
            }
            best
        })
        .collect()
}

/// EvidenceFor when the orbit window `[-N, N]` of `x` comes within `eps`
/// of every center of a uniform net with spacing `eps`.
pub fn orbit_density(family: &MapFamily, x: f64, eps: f64, n: u64) -> Result<PropertyReport> {
    if !(eps > 0.0) {
        return Err(Error::InvalidArgument("eps must be positive".into()));
    }
    let space = family.space();
    let centers = space.net(eps);
    let window = OrbitWindow::compute(family, x, n)?;
    let coverage = net_coverage(family, &window, &centers);
    let (worst_idx, &(worst_d, worst_t)) = coverage
        .iter()
        .enumerate()
        .max_by(|a, b| a.1 .0.total_cmp(&b.1 .0).then(b.0.cmp(&a.0)))
        .expect("nets are non-empty");
    let covered = coverage.iter().filter(|c| c.0 < eps).count();
    let dense = covered == centers.len();
    Ok(PropertyReport::new(
        Property::OrbitDensity,
        if dense { Verdict::EvidenceFor } else { Verdict::EvidenceAgainst },
    )
    .real_param("x", x)
    .real_param("eps", eps)
    .param("N", n)
    .metric("net_centers", Value::Int(centers.len() as i64))
    .metric("covered_centers", Value::Int(covered as i64))
    .metric("worst_center_distance", Value::Real(worst_d))
    .witness(Witness::target(
        x,
        centers[worst_idx],
        worst_t,
        worst_d,
        "farthest net center from the orbit window",
    )))
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TransitivityParams {
    pub eps: f64,
    pub n: u64,
    /// Base points for the dense-orbit search.
    pub grid: usize,
    pub samples: usize,
    pub sampling: Sampling,
}

impl TransitivityParams {
    pub fn new(eps: f64, n: u64, grid: usize) -> Self {
        Self {
            eps,
            n,
            grid,
            samples: BALL_SAMPLES,
            sampling: Sampling::LowDiscrepancy,
        }
    }
}

/// Runs (a) a dense-orbit search over grid points and (b) a scan of all
/// ordered pairs of balls of radius `eps` centred on an `eps`-net. The
/// verdict follows (b); `agree` records whether (a) matches.
pub fn transitivity_scan(family: &MapFamily, p: &TransitivityParams) -> Result<PropertyReport> {
    if !(p.eps > 0.0) {
        return Err(Error::InvalidArgument("eps must be positive".into()));
    }
    if p.grid < 2 {
        return Err(Error::InvalidArgument("grid needs at least 2 points".into()));
    }
    let space = family.space();

    let mut dense_point = None;
    for x in space.grid(p.grid) {
        let r = orbit_density(family, x, p.eps, p.n)?;
        if r.verdict == Verdict::EvidenceFor {
            dense_point = Some(x);
            break;
        }
    }
    let dense_verdict =
        if dense_point.is_some() { Verdict::EvidenceFor } else { Verdict::EvidenceAgainst };

    let centers = space.net(p.eps);
    let ball_orbits = centers
        .iter()
        .map(|&c| {
            ball_samples(space, c, p.eps, p.samples, p.sampling)
                .into_iter()
                .map(|s| OrbitWindow::compute(family, s, p.n))
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    let mut pairs_hit = 0;
    let mut first_miss: Option<Witness> = None;
    for (ui, orbits) in ball_orbits.iter().enumerate() {
        for &v in &centers {
            let mut best: Option<(f64, f64, i64)> = None;
            'search: for t in super::times_by_magnitude(p.n) {
                for o in orbits {
                    let d = space.metric(o.at(t), v);
                    if best.is_none_or(|b| d < b.0) {
                        best = Some((d, o.base(), t));
                    }
                    if d < p.eps {
                        break 'search;
                    }
                }
            }
            let (d, s, t) = best.expect("balls contain their center");
            if d < p.eps {
                pairs_hit += 1;
            } else if first_miss.is_none() {
                first_miss = Some(Witness::target(
                    s,
                    v,
                    t,
                    d,
                    format!("ball {} never meets ball {}", centers[ui], v),
                ));
            }
        }
    }
    let pairs = centers.len() * centers.len();
    let scan_verdict =
        if pairs_hit == pairs { Verdict::EvidenceFor } else { Verdict::EvidenceAgainst };

    let mut report = PropertyReport::new(Property::Transitivity, scan_verdict)
        .real_param("eps", p.eps)
        .param("N", p.n)
        .param("grid", p.grid)
        .param("samples", p.samples)
        .metric("dense_orbit", Value::Verdict(dense_verdict))
        .metric("open_set_scan", Value::Verdict(scan_verdict))
        .metric("agree", Value::Bool(dense_verdict == scan_verdict))
        .metric("pairs_checked", Value::Int(pairs as i64))
        .metric("pairs_hit", Value::Int(pairs_hit as i64));
    if let Sampling::Random { seed } = p.sampling {
        report = report.param("seed", seed);
    }
    if let Some(x) = dense_point {
        report = report.metric("dense_orbit_point", Value::Real(x));
    }
    if let Some(w) = first_miss {
        report = report.witness(w);
    }
    Ok(report)
}

/// Transitivity of the block family `f_{kr} ∘ … ∘ f_{(k-1)r+1}`.
pub fn r_transitivity_check(
    family: &MapFamily,
    r: u64,
    p: &TransitivityParams,
) -> Result<PropertyReport> {
    let blocks = block_family(family, r)?;
    let mut report = transitivity_scan(&blocks, p)?;
    report.property = Property::RTransitivity;
    // Block time `t` is time `t * r` of the original flow.
    for w in &mut report.witnesses {
        for t in &mut w.times {
            *t *= r as i64;
        }
    }
    report = report.param("r", r);
    if let Some(exact) = family.exact() {
        let identity = matches!(
            exact_periodicity(exact, r, p.n)?,
            crate::exact::ExactPeriodicity::Certificate
        );
        report = report.metric("identity_blocks_exact", Value::Bool(identity));
    }
    Ok(report)
}
