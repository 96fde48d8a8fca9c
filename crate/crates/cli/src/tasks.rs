//! The task table: every checker the CLI can run, its parameters and their
//! defaults.

use std::collections::BTreeMap;

use naads_core::checkers::{
    almost_periodicity_report, ap_propagation_check, commutativity_report, default_delta,
    dichotomy_scan, equicontinuity_modulus, exact_periodicity_report, hull_closure_equality,
    hull_periodicity_property, li_yorke_classify, minimality_certificate, orbit_density,
    periodicity_check, proximality_report, r_transitivity_check, return_times_report,
    sensitivity_at_point, transitivity_scan, uniform_ap_report, ApPropagationParams,
    DichotomyParams, HullClosureParams, HullPeriodicityParams, MinimalityParams, Sampling,
    SensitivityParams, TransitivityParams,
};
use naads_core::{fmt_real, MapFamily, PropertyReport, SpaceKind};

use crate::error::{CliError, CliResult};
use crate::params::Params;

/// Environment variable capping `max_points` of every hull enumeration.
pub const BUDGET_ENV: &str = "NAADS_BUDGET_POINTS";

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ParamDefault {
    Fixed(&'static str),
    /// `diam(X) / 4` of the family's space.
    QuarterDiameter,
    /// Optional with no default; left out of the record unless given.
    Unset,
}

type Runner = fn(&MapFamily, &Params) -> CliResult<PropertyReport>;

pub struct TaskSpec {
    pub name: &'static str,
    pub required: &'static [&'static str],
    pub optional: &'static [(&'static str, ParamDefault)],
    run: Runner,
}

impl std::fmt::Debug for TaskSpec {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("TaskSpec").field("name", &self.name).finish_non_exhaustive()
    }
}

use ParamDefault::{Fixed, QuarterDiameter, Unset};

const MAX_POINTS: (&str, ParamDefault) = ("max_points", Fixed("100000"));
const SEED: (&str, ParamDefault) = ("seed", Unset);

pub const TASKS: &[TaskSpec] = &[
    TaskSpec {
        name: "periodicity_check",
        required: &["x", "r"],
        optional: &[("horizon", Fixed("25")), ("tol", Fixed("1e-9"))],
        run: |f, p| Ok(periodicity_check(f, p.point("x", f.space())?, p.u64("r")?, p.u64("horizon")?, p.real("tol")?)?),
    },
    TaskSpec {
        name: "exact_periodicity",
        required: &["r"],
        optional: &[("horizon", Fixed("50"))],
        run: |f, p| Ok(exact_periodicity_report(f, p.u64("r")?, p.u64("horizon")?)?),
    },
    TaskSpec {
        name: "return_time_set",
        required: &["x", "eps"],
        optional: &[("N", Fixed("20"))],
        run: |f, p| Ok(return_times_report(f, p.point("x", f.space())?, p.real("eps")?, p.u64("N")?)?),
    },
    TaskSpec {
        name: "almost_periodicity",
        required: &["x", "eps"],
        optional: &[("N", Fixed("40"))],
        run: |f, p| Ok(almost_periodicity_report(f, p.point("x", f.space())?, p.real("eps")?, p.u64("N")?)?),
    },
    TaskSpec {
        name: "uniform_almost_periodicity",
        required: &["eps"],
        optional: &[("N", Fixed("40")), ("grid", Fixed("64"))],
        run: |f, p| Ok(uniform_ap_report(f, p.real("eps")?, p.u64("N")?, p.usize("grid")?)?),
    },
    TaskSpec {
        name: "equicontinuity_modulus",
        required: &["eps"],
        optional: &[("N", Fixed("50")), ("grid", Fixed("16"))],
        run: |f, p| Ok(equicontinuity_modulus(f, p.real("eps")?, p.u64("N")?, p.usize("grid")?)?),
    },
    TaskSpec {
        name: "proximality",
        required: &["x", "y"],
        optional: &[("N", Fixed("100")), ("tol", Fixed("1e-3"))],
        run: |f, p| {
            let s = f.space();
            Ok(proximality_report(f, p.point("x", s)?, p.point("y", s)?, p.u64("N")?, p.real("tol")?)?)
        },
    },
    TaskSpec {
        name: "li_yorke_classify",
        required: &["x", "y"],
        optional: &[("N", Fixed("200")), ("low_tol", Fixed("1e-3")), ("high_tol", Fixed("0.3"))],
        run: |f, p| {
            let s = f.space();
            Ok(li_yorke_classify(
                f,
                p.point("x", s)?,
                p.point("y", s)?,
                p.u64("N")?,
                p.real("low_tol")?,
                p.real("high_tol")?,
            )?)
        },
    },
    TaskSpec {
        name: "sensitivity_at_point",
        required: &["x"],
        optional: &[
            ("delta", QuarterDiameter),
            ("radii", Fixed("0.1,0.01")),
            ("samples", Fixed("16")),
            ("N", Fixed("200")),
            SEED,
        ],
        run: |f, p| {
            let params = SensitivityParams {
                x: p.point("x", f.space())?,
                delta: p.real("delta")?,
                radii: p.reals("radii")?,
                samples: p.usize("samples")?,
                n: p.u64("N")?,
                sampling: sampling(p)?,
            };
            Ok(sensitivity_at_point(f, &params)?)
        },
    },
    TaskSpec {
        name: "orbit_density",
        required: &["x", "eps"],
        optional: &[("N", Fixed("120"))],
        run: |f, p| Ok(orbit_density(f, p.point("x", f.space())?, p.real("eps")?, p.u64("N")?)?),
    },
    TaskSpec {
        name: "transitivity_scan",
        required: &["eps"],
        optional: &[("N", Fixed("120")), ("grid", Fixed("8")), ("samples", Fixed("16")), SEED],
        run: |f, p| Ok(transitivity_scan(f, &transitivity(p)?)?),
    },
    TaskSpec {
        name: "r_transitivity_check",
        required: &["r"],
        optional: &[
            ("eps", Fixed("0.05")),
            ("N", Fixed("60")),
            ("grid", Fixed("8")),
            ("samples", Fixed("16")),
            SEED,
        ],
        run: |f, p| Ok(r_transitivity_check(f, p.u64("r")?, &transitivity(p)?)?),
    },
    TaskSpec {
        name: "minimality_certificate",
        required: &["eps"],
        optional: &[("order_cap", Fixed("8")), ("depth", Fixed("8")), ("grid", Unset), MAX_POINTS],
        run: |f, p| {
            let params = MinimalityParams {
                eps: p.rational("eps")?,
                order_cap: p.u64("order_cap")?,
                depth: p.u64("depth")?,
                grid: p.opt_usize("grid")?,
                max_points: p.usize("max_points")?,
            };
            Ok(minimality_certificate(f, &params)?)
        },
    },
    TaskSpec {
        name: "hull_periodicity_property",
        required: &["x", "r"],
        optional: &[
            ("order_k", Fixed("8")),
            ("depth", Fixed("6")),
            ("horizon", Fixed("25")),
            ("tol", Fixed("1e-9")),
            MAX_POINTS,
        ],
        run: |f, p| {
            let params = HullPeriodicityParams {
                x: p.point("x", f.space())?,
                r: p.u64("r")?,
                order_k: p.u64("order_k")?,
                depth: p.u64("depth")?,
                horizon: p.u64("horizon")?,
                tol: p.real("tol")?,
                max_points: p.usize("max_points")?,
            };
            Ok(hull_periodicity_property(f, &params)?)
        },
    },
    TaskSpec {
        name: "ap_propagation_check",
        required: &["x", "eps"],
        optional: &[("N", Fixed("40")), ("order_k", Fixed("4")), ("depth", Fixed("3")), MAX_POINTS],
        run: |f, p| {
            let params = ApPropagationParams {
                x: p.point("x", f.space())?,
                eps: p.real("eps")?,
                n: p.u64("N")?,
                order_k: p.u64("order_k")?,
                depth: p.u64("depth")?,
                max_points: p.usize("max_points")?,
            };
            Ok(ap_propagation_check(f, &params)?)
        },
    },
    TaskSpec {
        name: "hull_closure_equality",
        required: &["x", "eps"],
        optional: &[
            ("N", Fixed("40")),
            ("order_k", Fixed("8")),
            ("depth", Fixed("6")),
            ("samples", Fixed("8")),
            ("grid", Fixed("8")),
            MAX_POINTS,
        ],
        run: |f, p| {
            let params = HullClosureParams {
                x: p.point("x", f.space())?,
                eps: p.real("eps")?,
                n: p.u64("N")?,
                order_k: p.u64("order_k")?,
                depth: p.u64("depth")?,
                samples: p.usize("samples")?,
                equi_grid: p.usize("grid")?,
                max_points: p.usize("max_points")?,
            };
            Ok(hull_closure_equality(f, &params)?)
        },
    },
    TaskSpec {
        name: "dichotomy_scan",
        required: &[],
        optional: &[
            ("eps", Fixed("0.1")),
            ("delta", QuarterDiameter),
            ("grid", Fixed("9")),
            ("order_k", Fixed("2")),
            ("depth", Fixed("2")),
            ("N", Fixed("60")),
            ("radii", Fixed("0.1,0.01")),
            ("samples", Fixed("16")),
            ("propagation_samples", Fixed("8")),
            MAX_POINTS,
            SEED,
        ],
        run: |f, p| {
            let params = DichotomyParams {
                eps: p.real("eps")?,
                delta: p.real("delta")?,
                grid: p.usize("grid")?,
                order_k: p.u64("order_k")?,
                depth: p.u64("depth")?,
                n: p.u64("N")?,
                radii: p.reals("radii")?,
                samples: p.usize("samples")?,
                sampling: sampling(p)?,
                max_points: p.usize("max_points")?,
                propagation_samples: p.usize("propagation_samples")?,
            };
            Ok(dichotomy_scan(f, &params)?)
        },
    },
    TaskSpec {
        name: "commutativity_audit",
        required: &[],
        optional: &[("max_index", Fixed("8")), ("grid", Fixed("16"))],
        run: |f, p| Ok(commutativity_report(f, p.u64("max_index")?, p.usize("grid")?)?),
    },
];

fn sampling(p: &Params) -> CliResult<Sampling> {
    Ok(match p.opt_u64("seed")? {
        Some(seed) => Sampling::Random { seed },
        None => Sampling::LowDiscrepancy,
    })
}

fn transitivity(p: &Params) -> CliResult<TransitivityParams> {
    Ok(TransitivityParams {
        eps: p.real("eps")?,
        n: p.u64("N")?,
        grid: p.usize("grid")?,
        samples: p.usize("samples")?,
        sampling: sampling(p)?,
    })
}

pub fn task(name: &str) -> CliResult<&'static TaskSpec> {
    TASKS.iter().find(|t| t.name == name).ok_or_else(|| {
        let known: Vec<&str> = TASKS.iter().map(|t| t.name).collect();
        CliError::Usage(format!("unknown task `{name}`; known tasks: {}", known.join(", ")))
    })
}

/// The cap from [`BUDGET_ENV`], if set.
pub fn budget_cap_from_env() -> CliResult<Option<usize>> {
    match std::env::var(BUDGET_ENV) {
        Ok(v) => v
            .trim()
            .parse()
            .map(Some)
            .map_err(|_| CliError::Usage(format!("{BUDGET_ENV} = `{v}` is not a point count"))),
        Err(_) => Ok(None),
    }
}

impl TaskSpec {
    pub fn accepts(&self, key: &str) -> bool {
        self.required.contains(&key) || self.optional.iter().any(|(k, _)| *k == key)
    }

    /// Checks names against the table and fills in defaults. `budget_cap`
    /// lowers `max_points`; the record holds the value actually used.
    pub fn resolve(
        &self,
        space: SpaceKind,
        given: BTreeMap<String, String>,
        budget_cap: Option<usize>,
    ) -> CliResult<Params> {
        if let Some(key) = given.keys().find(|k| !self.accepts(k)) {
            return Err(CliError::Usage(format!("task `{}` has no parameter `{key}`", self.name)));
        }
        if let Some(key) = self.required.iter().find(|k| !given.contains_key(**k)) {
            return Err(CliError::Usage(format!(
                "task `{}` needs parameter `{key}`",
                self.name
            )));
        }
        let mut params = Params::new(given);
        for &(key, default) in self.optional {
            if params.contains(key) {
                continue;
            }
            match default {
                Fixed(v) => params.set(key, v.to_string()),
                QuarterDiameter => params.set(key, fmt_real(default_delta(space))),
                Unset => {}
            }
        }
        if let (Some(cap), true) = (budget_cap, self.accepts("max_points")) {
            let wanted = params.usize("max_points")?;
            if cap < wanted {
                params.set("max_points", cap.to_string());
            }
        }
        Ok(params)
    }

    pub fn run(&self, family: &MapFamily, params: &Params) -> CliResult<PropertyReport> {
        (self.run)(family, params)
    }
}
