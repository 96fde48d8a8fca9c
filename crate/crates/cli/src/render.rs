//! The report document: `key: value` lines in a fixed order, then
//! `[parameters]`, `[metrics]` and one `[witness.N]` block per witness.

use std::collections::BTreeMap;

use naads_core::{fmt_real, PropertyReport};

use crate::error::{CliError, CliResult};

pub const SCHEMA: &str = "naads-report/1";

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct ReportDoc {
    pub family: String,
    /// Inline family description; absent for corpus families.
    pub family_spec: Option<String>,
    pub task: String,
    pub property: String,
    pub verdict: String,
    pub expect: Option<String>,
    /// `match` or `mismatch` when `expect` is present.
    pub expectation: Option<String>,
    pub generated_unix: Option<u64>,
    pub parameters: BTreeMap<String, String>,
    pub metrics: BTreeMap<String, String>,
    pub witnesses: Vec<BTreeMap<String, String>>,
}

const WITNESS_KEYS: [&str; 5] = ["relation", "points", "times", "distance", "note"];

fn list<T>(items: &[T], f: impl Fn(&T) -> String) -> String {
    format!("[{}]", items.iter().map(f).collect::<Vec<_>>().join(", "))
}

impl ReportDoc {
    /// Copies verdict, metrics and witnesses out of `report`.
    pub fn fill_from(&mut self, report: &PropertyReport) {
        self.property = report.property.to_string();
        self.verdict = report.verdict.to_string();
        self.metrics = report.metrics.iter().map(|(k, v)| (k.clone(), v.to_string())).collect();
        self.witnesses = report
            .witnesses
            .iter()
            .map(|w| {
                let mut m = BTreeMap::new();
                m.insert("relation".into(), w.relation.as_str().to_string());
                m.insert("points".into(), list(&w.points, |&x| fmt_real(x)));
                m.insert("times".into(), list(&w.times, i64::to_string));
                m.insert("distance".into(), fmt_real(w.distance));
                if !w.note.is_empty() {
                    m.insert("note".into(), w.note.clone());
                }
                m
            })
            .collect();
    }

    pub fn render(&self) -> String {
        let mut out = String::new();
        let mut line = |k: &str, v: &str| {
            out.push_str(k);
            out.push_str(": ");
            out.push_str(v);
            out.push('\n');
        };
        line("schema", SCHEMA);
        line("family", &self.family);
        if let Some(spec) = &self.family_spec {
            line("family_spec", spec);
        }
        line("task", &self.task);
        line("property", &self.property);
        line("verdict", &self.verdict);
        if let Some(e) = &self.expect {
            line("expect", e);
        }
        if let Some(e) = &self.expectation {
            line("expectation", e);
        }
        if let Some(t) = self.generated_unix {
            line("generated_unix", &t.to_string());
        }
        let mut section = |name: &str, entries: &mut dyn Iterator<Item = (&str, &str)>| {
            out.push_str(&format!("\n[{name}]\n"));
            for (k, v) in entries {
                out.push_str(&format!("{k}: {v}\n"));
            }
        };
        section("parameters", &mut self.parameters.iter().map(|(k, v)| (k.as_str(), v.as_str())));
        section("metrics", &mut self.metrics.iter().map(|(k, v)| (k.as_str(), v.as_str())));
        for (i, w) in self.witnesses.iter().enumerate() {
            let mut fields = WITNESS_KEYS
                .iter()
                .filter_map(|&k| w.get(k).map(|v| (k, v.as_str())));
            section(&format!("witness.{}", i + 1), &mut fields);
        }
        out
    }

    pub fn parse(text: &str) -> CliResult<Self> {
        let bad = |n: usize, msg: &str| CliError::Schema(format!("report line {}: {msg}", n + 1));
        let mut doc = ReportDoc::default();
        let mut header = BTreeMap::new();
        let mut section: Option<String> = None;
        for (n, raw) in text.lines().enumerate() {
            let line = raw.trim_end();
            if line.is_empty() {
                continue;
            }
            if let Some(name) = line.strip_prefix('[').and_then(|l| l.strip_suffix(']')) {
                if let Some(i) = name.strip_prefix("witness.") {
                    if i.parse::<usize>().ok() != Some(doc.witnesses.len() + 1) {
                        return Err(bad(n, "witness blocks out of order"));
                    }
                    doc.witnesses.push(BTreeMap::new());
                } else if name != "parameters" && name != "metrics" {
                    return Err(bad(n, "unknown section"));
                }
                section = Some(name.to_string());
                continue;
            }
            let (k, v) = line.split_once(": ").ok_or_else(|| bad(n, "expected `key: value`"))?;
            let (k, v) = (k.to_string(), v.to_string());
            match section.as_deref() {
                None => {
                    header.insert(k, v);
                }
                Some("parameters") => {
                    doc.parameters.insert(k, v);
                }
                Some("metrics") => {
                    doc.metrics.insert(k, v);
                }
                Some(_) => {
                    doc.witnesses.last_mut().expect("witness section").insert(k, v);
                }
            }
        }
        let mut take = |k: &str| header.remove(k);
        if take("schema").as_deref() != Some(SCHEMA) {
            return Err(CliError::Schema(format!("not a {SCHEMA} document")));
        }
        let need = |v: Option<String>, k: &str| v.ok_or_else(|| CliError::Schema(format!("report lacks `{k}`")));
        doc.family = need(take("family"), "family")?;
        doc.family_spec = take("family_spec");
        doc.task = need(take("task"), "task")?;
        doc.property = need(take("property"), "property")?;
        doc.verdict = need(take("verdict"), "verdict")?;
        doc.expect = take("expect");
        doc.expectation = take("expectation");
        doc.generated_unix = match take("generated_unix") {
            Some(t) => Some(t.parse().map_err(|_| CliError::Schema("bad generated_unix".into()))?),
            None => None,
        };
        if let Some(k) = header.keys().next() {
            return Err(CliError::Schema(format!("unknown report field `{k}`")));
        }
        Ok(doc)
    }
}
