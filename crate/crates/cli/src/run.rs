//! Running scenarios, single checks and reruns of saved reports.

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};
use std::time::{SystemTime, UNIX_EPOCH};

use naads_core::{MapFamily, Verdict};

use crate::error::{CliError, CliResult, EXIT_BUDGET, EXIT_MISMATCH, EXIT_OK};
use crate::outputs::{csv, plan, OutputPlan};
use crate::params::{value_text, Params};
use crate::render::ReportDoc;
use crate::scenario::{FamilySpec, Scenario};
use crate::tasks::{task, TaskSpec};

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct RunOptions {
    /// Adds `generated_unix` to reports.
    pub timestamp: bool,
    /// Switches sampled balls to seeded random draws.
    pub seed: Option<u64>,
    /// Base directory for relative output paths.
    pub out_dir: Option<PathBuf>,
    /// Cap on `max_points`, normally from `NAADS_BUDGET_POINTS`.
    pub budget_cap: Option<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RunOutcome {
    pub doc: ReportDoc,
    pub exit_code: i32,
    pub written: Vec<PathBuf>,
}

impl RunOutcome {
    pub fn text(&self) -> String {
        self.doc.render()
    }
}

/// Exit status for a verdict: a budget stop is 2 unless it was expected,
/// a mismatch with `expect` is 1, anything else 0.
pub fn exit_code(verdict: Verdict, expect: Option<Verdict>) -> i32 {
    match expect {
        Some(e) if e == verdict => EXIT_OK,
        _ if verdict == Verdict::InconclusiveBudget => EXIT_BUDGET,
        Some(_) => EXIT_MISMATCH,
        None => EXIT_OK,
    }
}

fn parse_verdict(text: &str) -> CliResult<Verdict> {
    text.parse()
        .map_err(|_| CliError::Schema(format!("`{text}` is not a verdict")))
}

/// A validated task ready to run: nothing has been computed yet.
struct Prepared {
    spec: &'static TaskSpec,
    family: MapFamily,
    params: Params,
    expect: Option<Verdict>,
    doc: ReportDoc,
}

fn prepare(
    family_spec: &FamilySpec,
    task_name: &str,
    mut given: BTreeMap<String, String>,
    expect: Option<&str>,
    opts: &RunOptions,
) -> CliResult<Prepared> {
    let spec = task(task_name)?;
    let expect = expect.map(parse_verdict).transpose()?;
    let family = family_spec.build()?;
    if let (Some(seed), true) = (opts.seed, spec.accepts("seed")) {
        given.entry("seed".into()).or_insert_with(|| seed.to_string());
    }
    let params = spec.resolve(family.space(), given, opts.budget_cap)?;
    let doc = ReportDoc {
        family: family_spec.label().to_string(),
        family_spec: family_spec.inline_text(),
        task: spec.name.to_string(),
        expect: expect.map(|v| v.to_string()),
        parameters: params.iter().map(|(k, v)| (k.into(), v.into())).collect(),
        ..ReportDoc::default()
    };
    Ok(Prepared { spec, family, params, expect, doc })
}

impl Prepared {
    fn run(&mut self, opts: &RunOptions) -> CliResult<i32> {
        let report = self.spec.run(&self.family, &self.params)?;
        self.doc.fill_from(&report);
        if let Some(e) = self.expect {
            self.doc.expectation = Some(if e == report.verdict { "match" } else { "mismatch" }.into());
        }
        if opts.timestamp {
            self.doc.generated_unix =
                SystemTime::now().duration_since(UNIX_EPOCH).ok().map(|d| d.as_secs());
        }
        Ok(exit_code(report.verdict, self.expect))
    }
}

fn table_text(table: &toml::Table) -> CliResult<BTreeMap<String, String>> {
    table.iter().map(|(k, v)| Ok((k.clone(), value_text(k, v)?))).collect()
}

pub fn run_scenario_file(path: &Path, opts: &RunOptions) -> CliResult<RunOutcome> {
    let scenario = Scenario::load(path)?;
    let base = opts
        .out_dir
        .clone()
        .unwrap_or_else(|| path.parent().map(Path::to_path_buf).unwrap_or_default());
    run_scenario(&scenario, &base, opts)
}

/// Runs one scenario; relative output paths are taken from `base_dir`.
pub fn run_scenario(scenario: &Scenario, base_dir: &Path, opts: &RunOptions) -> CliResult<RunOutcome> {
    let given = table_text(&scenario.params)?;
    let mut job = prepare(&scenario.family, &scenario.task, given, scenario.expect.as_deref(), opts)?;
    let plans = scenario
        .outputs
        .iter()
        .map(|o| Ok((base_dir.join(&o.path), plan(o, &job.params, &job.family)?)))
        .collect::<CliResult<Vec<_>>>()?;
    let exit_code = job.run(opts)?;

    let mut written = Vec::new();
    for (path, plan) in &plans {
        let text = match plan {
            OutputPlan::Report => job.doc.render(),
            other => csv(other, &job.family)?,
        };
        if let Some(dir) = path.parent().filter(|d| !d.as_os_str().is_empty()) {
            std::fs::create_dir_all(dir).map_err(|e| CliError::io(dir, e))?;
        }
        std::fs::write(path, text).map_err(|e| CliError::io(path, e))?;
        written.push(path.clone());
    }
    Ok(RunOutcome { doc: job.doc, exit_code, written })
}

/// One checker run from the command line.
pub fn check(
    family: &FamilySpec,
    task_name: &str,
    params: BTreeMap<String, String>,
    expect: Option<&str>,
    opts: &RunOptions,
) -> CliResult<RunOutcome> {
    let mut job = prepare(family, task_name, params, expect, opts)?;
    let exit_code = job.run(opts)?;
    Ok(RunOutcome { doc: job.doc, exit_code, written: Vec::new() })
}

/// Re-runs a saved report from its parameter record. Exit 0 when the
/// verdict is reproduced, 1 otherwise.
pub fn rerun(report_text: &str, opts: &RunOptions) -> CliResult<RunOutcome> {
    let saved = ReportDoc::parse(report_text)?;
    let family = match &saved.family_spec {
        Some(text) => FamilySpec::from_inline_text(text)?,
        None => FamilySpec::Corpus(saved.family.clone()),
    };
    let mut job = prepare(&family, &saved.task, saved.parameters.clone(), saved.expect.as_deref(), opts)?;
    job.run(opts)?;
    let exit_code = if job.doc.verdict == saved.verdict { EXIT_OK } else { EXIT_MISMATCH };
    Ok(RunOutcome { doc: job.doc, exit_code, written: Vec::new() })
}
