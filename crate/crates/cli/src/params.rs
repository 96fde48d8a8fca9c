//! Checker parameters as text, with typed accessors.
//!
//! Every value is kept in its textual form so that a report can list the
//! full parameter record and a later run can read it back unchanged.

use std::collections::BTreeMap;

use naads_core::{fmt_real, parse_rational, SpaceKind};
use num_rational::BigRational;
use num_traits::ToPrimitive;

use crate::error::{CliError, CliResult};

/// Canonical text of a TOML scalar or array parameter.
pub fn value_text(key: &str, value: &toml::Value) -> CliResult<String> {
    Ok(match value {
        toml::Value::String(s) => s.trim().to_string(),
        toml::Value::Integer(i) => i.to_string(),
        toml::Value::Float(f) => fmt_real(*f),
        toml::Value::Boolean(b) => b.to_string(),
        toml::Value::Array(items) => items
            .iter()
            .map(|v| value_text(key, v))
            .collect::<CliResult<Vec<_>>>()?
            .join(","),
        other => {
            return Err(CliError::Schema(format!(
                "parameter `{key}` has unsupported type {}",
                other.type_str()
            )))
        }
    })
}

/// Resolved parameters of one task run.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Params {
    values: BTreeMap<String, String>,
}

impl Params {
    pub fn new(values: BTreeMap<String, String>) -> Self {
        Self { values }
    }

    pub fn iter(&self) -> impl Iterator<Item = (&str, &str)> {
        self.values.iter().map(|(k, v)| (k.as_str(), v.as_str()))
    }

    pub fn contains(&self, key: &str) -> bool {
        self.values.contains_key(key)
    }

    pub fn get(&self, key: &str) -> Option<&str> {
        self.values.get(key).map(String::as_str)
    }

    pub(crate) fn set(&mut self, key: &str, value: String) {
        self.values.insert(key.to_string(), value);
    }

    fn text(&self, key: &str) -> CliResult<&str> {
        self.get(key)
            .ok_or_else(|| CliError::Usage(format!("missing parameter `{key}`")))
    }

    fn bad(key: &str, text: &str, what: &str) -> CliError {
        CliError::Usage(format!("parameter `{key}` = `{text}` is not {what}"))
    }

    pub fn u64(&self, key: &str) -> CliResult<u64> {
        let t = self.text(key)?;
        t.parse().map_err(|_| Self::bad(key, t, "a non-negative integer"))
    }

    pub fn usize(&self, key: &str) -> CliResult<usize> {
        let t = self.text(key)?;
        t.parse().map_err(|_| Self::bad(key, t, "a non-negative integer"))
    }

    pub fn opt_usize(&self, key: &str) -> CliResult<Option<usize>> {
        if self.contains(key) {
            self.usize(key).map(Some)
        } else {
            Ok(None)
        }
    }

    pub fn opt_u64(&self, key: &str) -> CliResult<Option<u64>> {
        if self.contains(key) {
            self.u64(key).map(Some)
        } else {
            Ok(None)
        }
    }

    /// Decimal, exponent or `p/q` notation.
    pub fn real(&self, key: &str) -> CliResult<f64> {
        let t = self.text(key)?;
        parse_real(t).ok_or_else(|| Self::bad(key, t, "a real number"))
    }

    /// Exact value; decimals are read exactly, never through `f64`.
    pub fn rational(&self, key: &str) -> CliResult<BigRational> {
        let t = self.text(key)?;
        parse_rational(t).map_err(|_| Self::bad(key, t, "a rational number such as 1/8"))
    }

    pub fn reals(&self, key: &str) -> CliResult<Vec<f64>> {
        let t = self.text(key)?;
        t.split(',')
            .map(|part| parse_real(part.trim()).ok_or_else(|| Self::bad(key, t, "a list of reals")))
            .collect()
    }

    /// A point of `space`.
    pub fn point(&self, key: &str, space: SpaceKind) -> CliResult<f64> {
        let x = self.real(key)?;
        if space.contains(x) {
            Ok(x)
        } else {
            Err(CliError::Usage(format!("parameter `{key}` = {x} is not a point of {space}")))
        }
    }
}

pub fn parse_real(text: &str) -> Option<f64> {
    let text = text.trim();
    if let Ok(v) = text.parse::<f64>() {
        return v.is_finite().then_some(v);
    }
    parse_rational(text).ok()?.to_f64()
}
