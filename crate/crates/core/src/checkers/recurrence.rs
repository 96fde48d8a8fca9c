//! Return times, almost periodicity, and its propagation along hulls.

use crate::error::{Error, Result};
use crate::family::MapFamily;
use crate::flow::OrbitWindow;
use crate::hull::{hull_sample, DEFAULT_DEDUP_EPS};
use crate::report::{Property, PropertyReport, Value, Verdict, Witness};

/// `{n ∈ [-N, N] : d(ω_n(x), x) < eps}` with its gap structure.
#[derive(Debug, Clone, PartialEq)]
pub struct ReturnTimeSet {
    pub base: f64,
    pub eps: f64,
    pub window: u64,
    pub times: Vec<i64>,
    pub max_internal_gap: i64,
    /// Distance from `-N` to the first return.
    pub censored_left_gap: i64,
    /// Distance from the last return to `N`.
    pub censored_right_gap: i64,
}

impl ReturnTimeSet {
    /// `max(max_internal_gap, censored gaps)`.
    pub fn gap_bound(&self) -> i64 {
        self.max_internal_gap
            .max(self.censored_left_gap)
            .max(self.censored_right_gap)
    }

    fn from_window(window: &OrbitWindow, x: f64, eps: f64, n: u64, family: &MapFamily) -> Self {
        let space = family.space();
        let n_i = n as i64;
        let times: Vec<i64> = (-n_i..=n_i)
            .filter(|&t| space.metric(window.at(t), x) < eps)
            .collect();
        let max_internal_gap = times.windows(2).map(|w| w[1] - w[0]).max().unwrap_or(0);
        // `0` always returns, so `times` is never empty.
        let censored_left_gap = times.first().map_or(2 * n_i, |&t| t + n_i);
        let censored_right_gap = times.last().map_or(2 * n_i, |&t| n_i - t);
        Self {
            base: x,
            eps,
            window: n,
            times,
            max_internal_gap,
            censored_left_gap,
            censored_right_gap,
        }
    }
}

fn check_eps(eps: f64) -> Result<()> {
    if eps > 0.0 {
        Ok(())
    } else {
        Err(Error::InvalidArgument(format!("eps must be positive, got {eps}")))
    }
}

pub fn return_time_set(family: &MapFamily, x: f64, eps: f64, n: u64) -> Result<ReturnTimeSet> {
    check_eps(eps)?;
    if n == 0 {
        return Err(Error::InvalidArgument("return window must be at least 1".into()));
    }
    let window = OrbitWindow::compute(family, x, n)?;
    Ok(ReturnTimeSet::from_window(&window, x, eps, n, family))
}

/// The return set as a report: EvidenceFor when `x` returns at some
/// non-zero time of the window.
pub fn return_times_report(family: &MapFamily, x: f64, eps: f64, n: u64) -> Result<PropertyReport> {
    let set = return_time_set(family, x, eps, n)?;
    let window = OrbitWindow::compute(family, x, n)?;
    let recurs = set.times.len() > 1;
    let mut report = PropertyReport::new(
        Property::ReturnTimes,
        if recurs { Verdict::EvidenceFor } else { Verdict::EvidenceAgainst },
    )
    .real_param("x", x)
    .real_param("eps", eps)
    .param("N", n)
    .metric("times", Value::Ints(set.times.clone()))
    .metric("max_internal_gap", Value::Int(set.max_internal_gap))
    .metric("censored_left_gap", Value::Int(set.censored_left_gap))
    .metric("censored_right_gap", Value::Int(set.censored_right_gap));
    // Closest non-zero return, least |t| on ties.
    let best = window
        .times_by_magnitude(n)
        .skip(1)
        .map(|t| (t, family.space().metric(window.at(t), x)))
        .fold(None, |acc: Option<(i64, f64)>, cur| match acc {
            Some(a) if a.1 <= cur.1 => Some(a),
            _ => Some(cur),
        });
    if let Some((t, d)) = best {
        report = report.witness(Witness::returning(x, t, d, "closest return"));
    }
    Ok(report)
}

/// Gap bounds over the windows `N, 2N, 4N`. A strictly growing bound is
/// evidence that the return set is not syndetic.
pub fn almost_periodicity_report(
    family: &MapFamily,
    x: f64,
    eps: f64,
    n: u64,
) -> Result<PropertyReport> {
    check_eps(eps)?;
    if n == 0 {
        return Err(Error::InvalidArgument("return window must be at least 1".into()));
    }
    let windows = [n, 2 * n, 4 * n];
    let orbit = OrbitWindow::compute(family, x, 4 * n)?;
    let sets: Vec<ReturnTimeSet> = windows
        .iter()
        .map(|&w| ReturnTimeSet::from_window(&orbit, x, eps, w, family))
        .collect();
    let trend: Vec<i64> = sets.iter().map(ReturnTimeSet::gap_bound).collect();
    let growing = trend.windows(2).all(|w| w[1] > w[0]);
    let first = &sets[0];
    let last = &sets[2];

    let mut report = PropertyReport::new(
        Property::AlmostPeriodicity,
        if growing { Verdict::EvidenceAgainst } else { Verdict::EvidenceFor },
    )
    .real_param("x", x)
    .real_param("eps", eps)
    .param("N", n)
    .metric("windows", Value::Ints(windows.iter().map(|&w| w as i64).collect()))
    .metric("gap_trend", Value::Ints(trend.clone()))
    .metric("max_internal_gap", Value::Int(first.max_internal_gap))
    .metric("censored_left_gap", Value::Int(first.censored_left_gap))
    .metric("censored_right_gap", Value::Int(first.censored_right_gap));

    if growing {
        let edge = if last.censored_right_gap >= last.censored_left_gap {
            4 * n as i64
        } else {
            -(4 * n as i64)
        };
        let d = family.space().metric(orbit.at(edge), x);
        report = report.witness(Witness::returning(x, edge, d, "no return near the window edge"));
    } else {
        report = report.metric("M", Value::Int(*trend.iter().max().expect("three windows")));
    }
    Ok(report)
}

/// One gap bound `M` shared by every grid point, or the worst point.
pub fn uniform_ap_report(
    family: &MapFamily,
    eps: f64,
    n: u64,
    grid_size: usize,
) -> Result<PropertyReport> {
    if grid_size < 2 {
        return Err(Error::InvalidArgument("grid needs at least 2 points".into()));
    }
    let mut common_m = 0;
    let mut worst: Option<(f64, PropertyReport)> = None;
    for x in family.space().grid(grid_size) {
        let r = almost_periodicity_report(family, x, eps, n)?;
        if r.verdict == Verdict::EvidenceFor {
            common_m = common_m.max(r.int("M").unwrap_or(0));
        } else {
            let score = r.ints("gap_trend").and_then(|t| t.last().copied()).unwrap_or(0);
            let replace = match &worst {
                None => true,
                Some((_, w)) => {
                    score > w.ints("gap_trend").and_then(|t| t.last().copied()).unwrap_or(0)
                }
            };
            if replace {
                worst = Some((x, r));
            }
        }
    }
    let report = PropertyReport::new(Property::UniformAlmostPeriodicity, Verdict::EvidenceFor)
        .real_param("eps", eps)
        .param("N", n)
        .param("grid", grid_size);
    Ok(match worst {
        None => report.metric("M", Value::Int(common_m)),
        Some((x, r)) => {
            let mut out = PropertyReport { verdict: Verdict::EvidenceAgainst, ..report }
                .metric("worst_point", Value::Real(x));
            if let Some(trend) = r.metrics.get("gap_trend") {
                out = out.metric("worst_gap_trend", trend.clone());
            }
            out.witnesses = r.witnesses;
            out
        }
    })
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ApPropagationParams {
    pub x: f64,
    pub eps: f64,
    pub n: u64,
    pub order_k: u64,
    pub depth: u64,
    pub max_points: usize,
}

/// Checks that almost periodicity of `x` carries over to sampled hull
/// points at the widened scale `3 * eps`.
pub fn ap_propagation_check(family: &MapFamily, p: &ApPropagationParams) -> Result<PropertyReport> {
    if !family.declared_commutative() {
        return Err(Error::Precondition(format!(
            "`{}` is not a commutative family",
            family.name()
        )));
    }
    let base = almost_periodicity_report(family, p.x, p.eps, p.n)?;
    if base.verdict != Verdict::EvidenceFor {
        return Err(Error::Precondition(format!(
            "x = {} shows no almost periodicity evidence at eps = {}",
            p.x, p.eps
        )));
    }
    let hull = hull_sample(family, p.x, p.order_k, p.depth, DEFAULT_DEDUP_EPS, p.max_points)?;
    let widened = 3.0 * p.eps;
    let mut common_m = base.int("M").unwrap_or(0);
    let mut failures = Vec::new();
    for &y in &hull.points {
        let r = almost_periodicity_report(family, y, widened, p.n)?;
        match r.verdict {
            Verdict::EvidenceFor => common_m = common_m.max(r.int("M").unwrap_or(0)),
            _ => failures.push((y, r)),
        }
    }
    let mut report = PropertyReport::new(
        Property::AlmostPeriodicityPropagation,
        if failures.is_empty() { Verdict::EvidenceFor } else { Verdict::EvidenceAgainst },
    )
    .real_param("x", p.x)
    .real_param("eps", p.eps)
    .param("N", p.n)
    .param("order_k", p.order_k)
    .param("depth", p.depth)
    .param("max_points", p.max_points)
    .metric("hull_points", Value::Int(hull.len() as i64))
    .metric("budget_exhausted", Value::Bool(hull.budget_exhausted))
    .metric("failing_points", Value::Int(failures.len() as i64))
    .metric("widened_eps", Value::Real(widened));
    if failures.is_empty() {
        report = report.metric("M", Value::Int(common_m));
    }
    for (_, r) in failures.into_iter().take(8) {
        report.witnesses.extend(r.witnesses);
    }
    Ok(report)
}
