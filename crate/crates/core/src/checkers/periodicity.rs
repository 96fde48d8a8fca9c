use crate::error::{Error, Result};
use crate::exact::{exact_periodicity, ExactPeriodicity};
use crate::family::MapFamily;
use crate::flow::OrbitWindow;
use crate::report::{Property, PropertyReport, Value, Verdict, Witness};

/// Largest `d(ω_{jr}(x), x)` over `|j| ≤ horizon`, and the first `jr`
/// (least `|j|`, positive first) whose deviation exceeds `tol`.
pub fn periodicity_deviation(
    family: &MapFamily,
    x: f64,
    r: u64,
    horizon: u64,
    tol: f64,
) -> Result<(f64, Option<(i64, f64)>)> {
    let window = OrbitWindow::compute(family, x, horizon * r)?;
    let space = family.space();
    let mut worst: f64 = 0.0;
    let mut first_failure = None;
    for j in 1..=horizon as i64 {
        for n in [j * r as i64, -j * r as i64] {
            let d = space.metric(window.at(n), x);
            worst = worst.max(d);
            if d > tol && first_failure.is_none() {
                first_failure = Some((n, d));
            }
        }
    }
    Ok((worst, first_failure))
}

/// Is `x` periodic with period `r` on the window `|j| ≤ horizon`?
///
/// Rotation families with an exact view are decided exactly (the answer is
/// the same for every point); otherwise the float deviation is compared
/// against `tol`.
pub fn periodicity_check(
    family: &MapFamily,
    x: f64,
    r: u64,
    horizon: u64,
    tol: f64,
) -> Result<PropertyReport> {
    if r == 0 {
        return Err(Error::InvalidArgument("period must be at least 1".into()));
    }
    let (worst, failure) = periodicity_deviation(family, x, r, horizon, tol)?;
    let base = PropertyReport::new(Property::Periodicity, Verdict::EvidenceFor)
        .real_param("x", x)
        .param("r", r)
        .param("horizon", horizon)
        .real_param("tol", tol)
        .metric("max_deviation", Value::Real(worst));

    if let Some(exact) = family.exact() {
        let report = base.metric("exact", Value::Bool(true));
        return Ok(match exact_periodicity(exact, r, horizon)? {
            ExactPeriodicity::Certificate => PropertyReport { verdict: Verdict::Certified, ..report },
            ExactPeriodicity::Refutation { n, displacement } => {
                let window = OrbitWindow::compute(family, x, n.unsigned_abs())?;
                let d = family.space().metric(window.at(n), x);
                PropertyReport { verdict: Verdict::Refuted, ..report }
                    .metric("witness_n", Value::Int(n))
                    .metric("witness_displacement", Value::Text(displacement.to_string()))
                    .witness(Witness::returning(x, n, d, "omega_n(x) != x"))
            }
        });
    }

    let report = base.metric("exact", Value::Bool(false));
    Ok(match failure {
        None => report,
        Some((n, d)) => PropertyReport { verdict: Verdict::Refuted, ..report }
            .metric("witness_n", Value::Int(n))
            .witness(Witness::returning(x, n, d, "omega_n(x) != x")),
    })
}

/// Exact periodicity of a rotation family; errors if the family has no
/// exact view.
pub fn exact_periodicity_report(family: &MapFamily, r: u64, horizon: u64) -> Result<PropertyReport> {
    let exact = family.exact().ok_or_else(|| {
        Error::Precondition(format!("`{}` has no exact rotation view", family.name()))
    })?;
    let report = PropertyReport::new(Property::ExactPeriodicity, Verdict::Certified)
        .param("r", r)
        .param("horizon", horizon);
    Ok(match exact_periodicity(exact, r, horizon)? {
        ExactPeriodicity::Certificate => report,
        ExactPeriodicity::Refutation { n, displacement } => {
            let d = family.space().metric(crate::flow::omega(family, n, 0.0)?, 0.0);
            PropertyReport { verdict: Verdict::Refuted, ..report }
                .metric("witness_n", Value::Int(n))
                .metric("witness_displacement", Value::Text(displacement.to_string()))
                .witness(Witness::returning(0.0, n, d, "displacement of omega_n is nonzero"))
        }
    })
}
