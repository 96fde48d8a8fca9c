//! Structured verdicts returned by every checker.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::family::MapFamily;
use crate::flow::omega;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Verdict {
    /// Exact or finitely decidable positive answer.
    Certified,
    /// Exact or finitely decidable negative answer, with a witness.
    Refuted,
    EvidenceFor,
    EvidenceAgainst,
    InconclusiveBudget,
}

impl Verdict {
    pub fn as_str(self) -> &'static str {
        match self {
            Verdict::Certified => "Certified",
            Verdict::Refuted => "Refuted",
            Verdict::EvidenceFor => "EvidenceFor",
            Verdict::EvidenceAgainst => "EvidenceAgainst",
            Verdict::InconclusiveBudget => "InconclusiveBudget",
        }
    }

    /// `Certified` and `EvidenceFor`.
    pub fn is_positive(self) -> bool {
        matches!(self, Verdict::Certified | Verdict::EvidenceFor)
    }

    pub fn is_negative(self) -> bool {
        matches!(self, Verdict::Refuted | Verdict::EvidenceAgainst)
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Verdict {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Ok(match s.trim() {
            "Certified" => Verdict::Certified,
            "Refuted" => Verdict::Refuted,
            "EvidenceFor" => Verdict::EvidenceFor,
            "EvidenceAgainst" => Verdict::EvidenceAgainst,
            "InconclusiveBudget" => Verdict::InconclusiveBudget,
            other => return Err(Error::InvalidArgument(format!("unknown verdict `{other}`"))),
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Property {
    Periodicity,
    ExactPeriodicity,
    ReturnTimes,
    AlmostPeriodicity,
    UniformAlmostPeriodicity,
    Equicontinuity,
    Proximality,
    LiYorke,
    Sensitivity,
    OrbitDensity,
    Transitivity,
    RTransitivity,
    Minimality,
    HullPeriodicity,
    AlmostPeriodicityPropagation,
    HullClosureEquality,
    Dichotomy,
    Commutativity,
}

impl Property {
    pub fn as_str(self) -> &'static str {
        match self {
            Property::Periodicity => "periodicity",
            Property::ExactPeriodicity => "exact_periodicity",
            Property::ReturnTimes => "return_times",
            Property::AlmostPeriodicity => "almost_periodicity",
            Property::UniformAlmostPeriodicity => "uniform_almost_periodicity",
            Property::Equicontinuity => "equicontinuity",
            Property::Proximality => "proximality",
            Property::LiYorke => "li_yorke",
            Property::Sensitivity => "sensitivity",
            Property::OrbitDensity => "orbit_density",
            Property::Transitivity => "transitivity",
            Property::RTransitivity => "r_transitivity",
            Property::Minimality => "minimality",
            Property::HullPeriodicity => "hull_periodicity",
            Property::AlmostPeriodicityPropagation => "almost_periodicity_propagation",
            Property::HullClosureEquality => "hull_closure_equality",
            Property::Dichotomy => "dichotomy",
            Property::Commutativity => "commutativity",
        }
    }
}

impl fmt::Display for Property {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// How a witness's distance is recomputed from the flow.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Relation {
    /// `d(ω_n(x), x)` with `points = [x]`, `times = [n]`.
    Return,
    /// `d(ω_n(x), ω_n(y))` with `points = [x, y]`, `times = [n]`.
    Pair,
    /// `d(ω_n(x), c)` with `points = [x, c]`, `times = [n]`.
    Target,
    /// `d(ω_{r_m} ∘ … ∘ ω_{r_1}(x), c)` with `points = [x, c]` and
    /// `times = [r_1, …, r_m]`.
    Word,
}

impl Relation {
    pub fn as_str(self) -> &'static str {
        match self {
            Relation::Return => "return",
            Relation::Pair => "pair",
            Relation::Target => "target",
            Relation::Word => "word",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Witness {
    pub relation: Relation,
    pub note: String,
    pub points: Vec<f64>,
    pub times: Vec<i64>,
    pub distance: f64,
}

impl Witness {
    pub fn returning(x: f64, n: i64, distance: f64, note: impl Into<String>) -> Self {
        Self { relation: Relation::Return, note: note.into(), points: vec![x], times: vec![n], distance }
    }

    pub fn pair(x: f64, y: f64, n: i64, distance: f64, note: impl Into<String>) -> Self {
        Self { relation: Relation::Pair, note: note.into(), points: vec![x, y], times: vec![n], distance }
    }

    pub fn target(x: f64, c: f64, n: i64, distance: f64, note: impl Into<String>) -> Self {
        Self { relation: Relation::Target, note: note.into(), points: vec![x, c], times: vec![n], distance }
    }

    pub fn word(x: f64, c: f64, word: Vec<i64>, distance: f64, note: impl Into<String>) -> Self {
        Self { relation: Relation::Word, note: note.into(), points: vec![x, c], times: word, distance }
    }

    /// Recomputes the witnessed distance through the flow of `family`.
    pub fn replay(&self, family: &MapFamily) -> Result<f64> {
        let space = family.space();
        let bad = || Error::InvalidArgument(format!("malformed {} witness", self.relation.as_str()));
        match self.relation {
            Relation::Return => {
                let (&x, &n) = (self.points.first().ok_or_else(bad)?, self.times.first().ok_or_else(bad)?);
                Ok(space.metric(omega(family, n, x)?, x))
            }
            Relation::Pair => {
                let n = *self.times.first().ok_or_else(bad)?;
                let [x, y] = self.points[..] else { return Err(bad()) };
                Ok(space.metric(omega(family, n, x)?, omega(family, n, y)?))
            }
            Relation::Target => {
                let n = *self.times.first().ok_or_else(bad)?;
                let [x, c] = self.points[..] else { return Err(bad()) };
                Ok(space.metric(omega(family, n, x)?, c))
            }
            Relation::Word => {
                let [x, c] = self.points[..] else { return Err(bad()) };
                let y = self.times.iter().try_fold(x, |acc, &r| omega(family, r, acc))?;
                Ok(space.metric(y, c))
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum Value {
    Int(i64),
    Real(f64),
    Bool(bool),
    Text(String),
    Verdict(Verdict),
    Ints(Vec<i64>),
    Reals(Vec<f64>),
}

/// Shortest text that parses back to the same `f64`.
pub fn fmt_real(x: f64) -> String {
    format!("{x:?}")
}

impl fmt::Display for Value {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Value::Int(v) => write!(f, "{v}"),
            Value::Real(v) => f.write_str(&fmt_real(*v)),
            Value::Bool(v) => write!(f, "{v}"),
            Value::Text(v) => f.write_str(v),
            Value::Verdict(v) => write!(f, "{v}"),
            Value::Ints(v) => {
                let parts: Vec<String> = v.iter().map(i64::to_string).collect();
                write!(f, "[{}]", parts.join(", "))
            }
            Value::Reals(v) => {
                let parts: Vec<String> = v.iter().map(|&x| fmt_real(x)).collect();
                write!(f, "[{}]", parts.join(", "))
            }
        }
    }
}

/// Verdict of one checker run together with everything needed to
/// reproduce it.
#[derive(Debug, Clone, PartialEq)]
pub struct PropertyReport {
    pub property: Property,
    pub verdict: Verdict,
    pub witnesses: Vec<Witness>,
    pub parameters: BTreeMap<String, String>,
    pub metrics: BTreeMap<String, Value>,
}

impl PropertyReport {
    pub fn new(property: Property, verdict: Verdict) -> Self {
        Self {
            property,
            verdict,
            witnesses: Vec::new(),
            parameters: BTreeMap::new(),
            metrics: BTreeMap::new(),
        }
    }

    pub fn param(mut self, key: &str, value: impl fmt::Display) -> Self {
        self.parameters.insert(key.to_string(), value.to_string());
        self
    }

    pub fn real_param(self, key: &str, value: f64) -> Self {
        self.param(key, fmt_real(value))
    }

    pub fn metric(mut self, key: &str, value: Value) -> Self {
        self.metrics.insert(key.to_string(), value);
        self
    }

    pub fn witness(mut self, w: Witness) -> Self {
        self.witnesses.push(w);
        self
    }

    pub fn int(&self, key: &str) -> Option<i64> {
        match self.metrics.get(key) {
            Some(Value::Int(v)) => Some(*v),
            _ => None,
        }
    }

    pub fn real(&self, key: &str) -> Option<f64> {
        match self.metrics.get(key) {
            Some(Value::Real(v)) => Some(*v),
            Some(Value::Int(v)) => Some(*v as f64),
            _ => None,
        }
    }

    pub fn flag(&self, key: &str) -> Option<bool> {
        match self.metrics.get(key) {
            Some(Value::Bool(v)) => Some(*v),
            _ => None,
        }
    }

    pub fn sub_verdict(&self, key: &str) -> Option<Verdict> {
        match self.metrics.get(key) {
            Some(Value::Verdict(v)) => Some(*v),
            _ => None,
        }
    }

    pub fn ints(&self, key: &str) -> Option<&[i64]> {
        match self.metrics.get(key) {
            Some(Value::Ints(v)) => Some(v),
            _ => None,
        }
    }

    pub fn reals(&self, key: &str) -> Option<&[f64]> {
        match self.metrics.get(key) {
            Some(Value::Reals(v)) => Some(v),
            _ => None,
        }
    }

    pub fn text(&self, key: &str) -> Option<&str> {
        match self.metrics.get(key) {
            Some(Value::Text(v)) => Some(v),
            _ => None,
        }
    }

    /// Largest `|replayed - reported|` over all witnesses.
    pub fn witness_replay_error(&self, family: &MapFamily) -> Result<f64> {
        self.witnesses.iter().try_fold(0.0_f64, |acc, w| {
            Ok(acc.max((w.replay(family)? - w.distance).abs()))
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn verdict_round_trip() {
        for v in [
            Verdict::Certified,
            Verdict::Refuted,
            Verdict::EvidenceFor,
            Verdict::EvidenceAgainst,
            Verdict::InconclusiveBudget,
        ] {
            assert_eq!(v.as_str().parse::<Verdict>().unwrap(), v);
        }
        assert!("Maybe".parse::<Verdict>().is_err());
    }

    #[test]
    fn value_formatting_is_stable() {
        assert_eq!(Value::Real(0.1).to_string(), "0.1");
        assert_eq!(Value::Real(1e-9).to_string(), "1e-9");
        assert_eq!(Value::Ints(vec![-3, 0, 2]).to_string(), "[-3, 0, 2]");
    }
}
