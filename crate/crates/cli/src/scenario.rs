//! Scenario files: which family, which task, which parameters, and where
//! the results go.

use std::path::{Path, PathBuf};

use naads_core::{
    corpus, parse_rational, Homeomorphism, MapFamily, PiecewiseLinear, RationalAngle,
    RationalRotationFamily, SpaceKind,
};
use num_bigint::Sign;
use serde::{Deserialize, Serialize};

use crate::error::{CliError, CliResult};

#[derive(Debug, Clone, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Scenario {
    pub family: FamilySpec,
    pub task: String,
    #[serde(default)]
    pub expect: Option<String>,
    #[serde(default)]
    pub params: toml::Table,
    #[serde(default)]
    pub outputs: Vec<OutputSpec>,
}

impl Scenario {
    pub fn from_toml(text: &str) -> CliResult<Self> {
        toml::from_str(text).map_err(|e| CliError::Schema(e.message().to_string()))
    }

    pub fn load(path: &Path) -> CliResult<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| CliError::io(path, e))?;
        Self::from_toml(&text)
    }
}

/// A corpus name or an inline description.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum FamilySpec {
    Corpus(String),
    Inline(InlineFamily),
}

/// Families given directly in a scenario. Each cycles through its list:
/// `f_n` is entry `(n - 1) mod len`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum InlineFamily {
    /// Circle rotations by exact angles in turns, e.g. `"1/3"`, `"-0.25"`.
    RotationCycle {
        #[serde(default, skip_serializing_if = "Option::is_none")]
        name: Option<String>,
        steps: Vec<String>,
    },
    /// Interval power maps `x^e`, `e` a positive rational such as `"1/2"`.
    PowerCycle {
        #[serde(default, skip_serializing_if = "Option::is_none")]
        name: Option<String>,
        exponents: Vec<String>,
    },
    /// Increasing piecewise-linear interval maps given by breakpoints.
    PiecewiseCycle {
        #[serde(default, skip_serializing_if = "Option::is_none")]
        name: Option<String>,
        maps: Vec<Vec<[f64; 2]>>,
        #[serde(default)]
        commutative: bool,
    },
}

impl FamilySpec {
    /// Label used in reports: the corpus name, or the inline family's
    /// name with `inline` as fallback.
    pub fn label(&self) -> &str {
        match self {
            FamilySpec::Corpus(name) => name,
            FamilySpec::Inline(f) => f.name().unwrap_or("inline"),
        }
    }

    /// Single-line TOML of an inline family.
    pub fn inline_text(&self) -> Option<String> {
        match self {
            FamilySpec::Corpus(_) => None,
            FamilySpec::Inline(f) => toml::Value::try_from(f).ok().map(|v| v.to_string()),
        }
    }

    pub fn from_inline_text(text: &str) -> CliResult<Self> {
        #[derive(Deserialize)]
        struct Wrapper {
            family: InlineFamily,
        }
        let w: Wrapper = toml::from_str(&format!("family = {text}"))
            .map_err(|e| CliError::Schema(format!("inline family: {}", e.message())))?;
        Ok(FamilySpec::Inline(w.family))
    }

    pub fn build(&self) -> CliResult<MapFamily> {
        match self {
            FamilySpec::Corpus(name) => Ok(corpus(name)?.family),
            FamilySpec::Inline(f) => f.build(),
        }
    }
}

fn non_empty<T>(items: &[T], what: &str) -> CliResult<()> {
    if items.is_empty() {
        Err(CliError::Schema(format!("inline family needs at least one {what}")))
    } else {
        Ok(())
    }
}

fn cycle_index(n: u64, len: usize) -> usize {
    ((n - 1) % len as u64) as usize
}

impl InlineFamily {
    pub fn name(&self) -> Option<&str> {
        match self {
            InlineFamily::RotationCycle { name, .. }
            | InlineFamily::PowerCycle { name, .. }
            | InlineFamily::PiecewiseCycle { name, .. } => name.as_deref(),
        }
    }

    fn build(&self) -> CliResult<MapFamily> {
        match self {
            InlineFamily::RotationCycle { name, steps } => {
                non_empty(steps, "step")?;
                let angles = steps
                    .iter()
                    .map(|s| {
                        parse_rational(s)
                            .map(RationalAngle::new)
                            .map_err(|_| CliError::Schema(format!("rotation step `{s}` is not rational")))
                    })
                    .collect::<CliResult<Vec<_>>>()?;
                let label = name.clone().unwrap_or_else(|| "inline".into());
                let exact = RationalRotationFamily::new(label, move |n| {
                    angles[cycle_index(n, angles.len())].clone()
                });
                Ok(MapFamily::from_rotations(exact))
            }
            InlineFamily::PowerCycle { name, exponents } => {
                non_empty(exponents, "exponent")?;
                let maps = exponents
                    .iter()
                    .map(|e| power_map(e))
                    .collect::<CliResult<Vec<_>>>()?;
                let label = name.clone().unwrap_or_else(|| "inline".into());
                Ok(MapFamily::builder(label, SpaceKind::UnitInterval, move |n| {
                    maps[cycle_index(n, maps.len())].clone()
                })
                .commutative(true)
                .build())
            }
            InlineFamily::PiecewiseCycle { name, maps, commutative } => {
                non_empty(maps, "map")?;
                let maps = maps
                    .iter()
                    .map(|bps| {
                        let bps = bps.iter().map(|&[x, y]| (x, y)).collect();
                        Ok(Homeomorphism::PiecewiseLinear(PiecewiseLinear::new(bps)?))
                    })
                    .collect::<CliResult<Vec<_>>>()?;
                let label = name.clone().unwrap_or_else(|| "inline".into());
                Ok(MapFamily::builder(label, SpaceKind::UnitInterval, move |n| {
                    maps[cycle_index(n, maps.len())].clone()
                })
                .commutative(*commutative)
                .build())
            }
        }
    }
}

fn power_map(text: &str) -> CliResult<Homeomorphism> {
    let bad = || CliError::Schema(format!("exponent `{text}` is not a positive rational"));
    let q = parse_rational(text).map_err(|_| bad())?;
    let (Some(num), Some(den)) = (to_u64(q.numer()), to_u64(q.denom())) else {
        return Err(bad());
    };
    if num == 0 {
        return Err(bad());
    }
    Ok(Homeomorphism::power(num, den)?)
}

fn to_u64(v: &num_bigint::BigInt) -> Option<u64> {
    let (sign, digits) = v.to_u64_digits();
    match (sign, digits.as_slice()) {
        (Sign::Plus, [d]) => Some(*d),
        _ => None,
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum OutputKind {
    Report,
    OrbitCsv,
    ReturnRaster,
    ModulusCurve,
}

#[derive(Debug, Clone, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OutputSpec {
    pub kind: OutputKind,
    pub path: PathBuf,
    /// Overrides of the task parameters for this output only, e.g. the
    /// base point or window of an orbit CSV.
    #[serde(default)]
    pub params: toml::Table,
}
