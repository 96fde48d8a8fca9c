//! CSV side files for plotting.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use naads_core::checkers::{equicontinuity_modulus, return_time_set};
use naads_core::{fmt_real, MapFamily, OrbitWindow};

use crate::error::{CliError, CliResult};
use crate::params::{value_text, Params};
use crate::scenario::{OutputKind, OutputSpec};

/// An output with all its inputs parsed, so bad values surface before the
/// checker runs.
#[derive(Debug, Clone, PartialEq)]
pub enum OutputPlan {
    Report,
    Orbit { x: f64, n: u64 },
    Raster { x: f64, eps: f64, n: u64 },
    Modulus { eps: f64, n: u64, grid: usize },
}

/// Output parameters fall back to the task's, then to fixed defaults.
pub fn plan(spec: &OutputSpec, task: &Params, family: &MapFamily) -> CliResult<OutputPlan> {
    let mut merged: BTreeMap<String, String> = task.iter().map(|(k, v)| (k.into(), v.into())).collect();
    for (k, v) in &spec.params {
        if !matches!(k.as_str(), "x" | "eps" | "N" | "grid") {
            return Err(CliError::Schema(format!("output parameter `{k}` is not one of x, eps, N, grid")));
        }
        merged.insert(k.clone(), value_text(k, v)?);
    }
    let p = Params::new(merged);
    let or = |key: &str, default: &str| -> Params {
        let mut q = p.clone();
        if !q.contains(key) {
            q.set(key, default.into());
        }
        q
    };
    let need_x = |kind: &str| {
        if p.contains("x") {
            p.point("x", family.space())
        } else {
            Err(CliError::Usage(format!("{kind} output needs `x` in its params or the task's")))
        }
    };
    Ok(match spec.kind {
        OutputKind::Report => OutputPlan::Report,
        OutputKind::OrbitCsv => OutputPlan::Orbit { x: need_x("orbit_csv")?, n: or("N", "20").u64("N")? },
        OutputKind::ReturnRaster => OutputPlan::Raster {
            x: need_x("return_raster")?,
            eps: or("eps", "0.1").real("eps")?,
            n: or("N", "20").u64("N")?,
        },
        OutputKind::ModulusCurve => OutputPlan::Modulus {
            eps: or("eps", "0.1").real("eps")?,
            n: or("N", "50").u64("N")?,
            grid: or("grid", "16").usize("grid")?,
        },
    })
}

/// CSV text of a non-report output.
pub fn csv(plan: &OutputPlan, family: &MapFamily) -> CliResult<String> {
    let mut out = String::new();
    match *plan {
        OutputPlan::Report => unreachable!("reports are rendered separately"),
        OutputPlan::Orbit { x, n } => {
            let window = OrbitWindow::compute(family, x, n)?;
            out.push_str("n,x\n");
            for t in -(n as i64)..=n as i64 {
                let _ = writeln!(out, "{t},{}", fmt_real(window.at(t)));
            }
        }
        OutputPlan::Raster { x, eps, n } => {
            let set = return_time_set(family, x, eps, n)?;
            out.push_str("n,is_return\n");
            for t in -(n as i64)..=n as i64 {
                let hit = set.times.binary_search(&t).is_ok();
                let _ = writeln!(out, "{t},{}", u8::from(hit));
            }
        }
        OutputPlan::Modulus { eps, n, grid } => {
            let report = equicontinuity_modulus(family, eps, n, grid)?;
            let windows = report.ints("windows").unwrap_or_default();
            let deltas = report.reals("delta_trend").unwrap_or_default();
            out.push_str("N,delta\n");
            for (w, d) in windows.iter().zip(deltas) {
                let _ = writeln!(out, "{w},{}", fmt_real(*d));
            }
        }
    }
    Ok(out)
}
