//! Named example families with their expected verdicts.

use std::sync::Mutex;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;

use crate::checkers::{
    almost_periodicity_report, commutativity_report, equicontinuity_modulus, li_yorke_classify, minimality_certificate,
    orbit_density, periodicity_check, r_transitivity_check, sensitivity_at_point,
    transitivity_scan, MinimalityParams, SensitivityParams, TransitivityParams, DEFAULT_RADII,
    DEFAULT_TOL, LI_YORKE_LOW_TOL,
};
use crate::error::{Error, Result};
use crate::exact::{harmonic_number, RationalAngle, RationalRotationFamily};
use crate::family::MapFamily;
use crate::homeo::{Homeomorphism, PiecewiseLinear};
use crate::hull::DEFAULT_MAX_POINTS;
use crate::report::{PropertyReport, Verdict};
use crate::space::SpaceKind;

/// Stable corpus identifiers, in listing order.
pub const CORPUS_NAMES: [&str; 7] = [
    "example1_tent_sqrt",
    "example2_powers",
    "circle_settling",
    "circle_ex4",
    "circle_harmonic",
    "interval_square_sqrt",
    "identity",
];

type Check = fn(&MapFamily) -> Result<PropertyReport>;

/// One row of a family's expected-property table.
#[derive(Clone)]
pub struct Expectation {
    pub claim: &'static str,
    pub verdict: Verdict,
    /// The mathematical fact behind the expected verdict.
    pub anchor: &'static str,
    /// Runs the checker configuration that decides the claim.
    pub check: Check,
}

impl std::fmt::Debug for Expectation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("Expectation")
            .field("claim", &self.claim)
            .field("verdict", &self.verdict)
            .field("anchor", &self.anchor)
            .finish_non_exhaustive()
    }
}

#[derive(Debug, Clone)]
pub struct CorpusEntry {
    pub name: &'static str,
    pub summary: &'static str,
    pub family: MapFamily,
    pub expected: Vec<Expectation>,
}

impl CorpusEntry {
    pub fn expected(&self, claim: &str) -> Option<Verdict> {
        self.expected.iter().find(|e| e.claim == claim).map(|e| e.verdict)
    }

    pub fn exact(&self) -> Option<&RationalRotationFamily> {
        self.family.exact()
    }

    /// Runs the check behind `claim`.
    pub fn evaluate(&self, claim: &str) -> Result<PropertyReport> {
        let e = self
            .expected
            .iter()
            .find(|e| e.claim == claim)
            .ok_or_else(|| Error::InvalidArgument(format!("`{}` has no claim `{claim}`", self.name)))?;
        (e.check)(&self.family)
    }
}

fn summary(name: &str) -> &'static str {
    match name {
        "example1_tent_sqrt" => "interval; odd maps piecewise linear through (1/2,1/4), even maps 1-sqrt(x); not commutative",
        "example2_powers" => "interval; f_(2n-1) = x^(2n), f_(2n) = x^(1/(2n)); Li-Yorke pairs everywhere",
        "circle_settling" => "circle rotations +1/2, -1/4, then +2^-k / -(2^-k + 2^-(k+1)); minimal, no almost periodic points",
        "circle_ex4" => "circle rotations +-2^-k in blocks of four; minimal with period-2 points, not transitive",
        "circle_harmonic" => "circle rotations +H_k, -H_k; transitive, periodic, not sensitive",
        "interval_square_sqrt" => "interval; f_odd = x^2, f_even = sqrt(x); hulls of 0 and 1/2 differ",
        "identity" => "circle rotation by 0 at every step",
        _ => "",
    }
}

/// `±2^{-k}` as an exact angle.
fn dyadic(k: u64, negative: bool) -> RationalAngle {
    let q = BigRational::new(BigInt::one(), BigInt::one() << k);
    RationalAngle::new(if negative { -q } else { q })
}

fn settling_exact() -> RationalRotationFamily {
    RationalRotationFamily::new("circle_settling", |n| match n {
        1 => RationalAngle::from_ratio(1, 2),
        2 => RationalAngle::from_ratio(-1, 4),
        n if n % 2 == 1 => dyadic((n - 1) / 2, false),
        n => {
            let k = n / 2;
            dyadic(k, true).add(&dyadic(k + 1, true))
        }
    })
}

fn ex4_exact() -> RationalRotationFamily {
    RationalRotationFamily::new("circle_ex4", |n| {
        let k = n.div_ceil(4);
        dyadic(k, matches!(n % 4, 2 | 3))
    })
}

fn harmonic_exact() -> RationalRotationFamily {
    // Steps are requested in order, so H_k is extended incrementally.
    let cache: Mutex<(u64, BigRational)> = Mutex::new((0, harmonic_number(0)));
    RationalRotationFamily::new("circle_harmonic", move |n| {
        let k = n.div_ceil(2);
        let h = {
            let mut c = cache.lock().expect("harmonic cache poisoned");
            if c.0 > k {
                *c = (0, harmonic_number(0));
            }
            while c.0 < k {
                c.0 += 1;
                let term = BigRational::new(BigInt::one(), BigInt::from(c.0));
                c.1 += term;
            }
            c.1.clone()
        };
        RationalAngle::new(if n % 2 == 1 { h } else { -h })
    })
}

fn identity_exact() -> RationalRotationFamily {
    RationalRotationFamily::new("identity", |_| RationalAngle::zero())
}

fn tent_sqrt() -> MapFamily {
    MapFamily::builder_fallible("example1_tent_sqrt", SpaceKind::UnitInterval, |n| {
        if n % 2 == 1 {
            Ok(Homeomorphism::PiecewiseLinear(PiecewiseLinear::new(vec![
                (0.0, 0.0),
                (0.5, 0.25),
                (1.0, 1.0),
            ])?))
        } else {
            Ok(Homeomorphism::Composite(vec![
                Homeomorphism::power(1, 2)?,
                Homeomorphism::Reflection,
            ]))
        }
    })
    .build()
}

fn powers() -> MapFamily {
    MapFamily::builder_fallible("example2_powers", SpaceKind::UnitInterval, |n| {
        if n % 2 == 1 {
            Homeomorphism::power(n + 1, 1)
        } else {
            Homeomorphism::power(1, n)
        }
    })
    .commutative(true)
    .build()
}

fn square_sqrt() -> MapFamily {
    MapFamily::builder_fallible("interval_square_sqrt", SpaceKind::UnitInterval, |n| {
        if n % 2 == 1 {
            Homeomorphism::power(2, 1)
        } else {
            Homeomorphism::power(1, 2)
        }
    })
    .commutative(true)
    .build()
}

fn audit_verdict(f: &MapFamily) -> Result<PropertyReport> {
    commutativity_report(f, 8, 16)
}

fn transitivity(f: &MapFamily, eps: f64, n: u64) -> Result<PropertyReport> {
    transitivity_scan(f, &TransitivityParams::new(eps, n, 8))
}

fn minimality(f: &MapFamily, num: i64, den: i64, order_cap: u64, depth: u64) -> Result<PropertyReport> {
    minimality_certificate(
        f,
        &MinimalityParams {
            eps: BigRational::new(num.into(), den.into()),
            order_cap,
            depth,
            grid: None,
            max_points: DEFAULT_MAX_POINTS,
        },
    )
}

fn sensitivity(f: &MapFamily, x: f64, delta: f64, n: u64) -> Result<PropertyReport> {
    sensitivity_at_point(
        f,
        &SensitivityParams {
            x,
            delta,
            radii: DEFAULT_RADII.to_vec(),
            samples: crate::checkers::BALL_SAMPLES,
            n,
            sampling: Default::default(),
        },
    )
}

fn expectations(name: &str) -> Vec<Expectation> {
    macro_rules! row {
        ($claim:literal, $verdict:ident, $anchor:literal, $check:expr) => {
            Expectation {
                claim: $claim,
                verdict: Verdict::$verdict,
                anchor: $anchor,
                check: $check,
            }
        };
    }
    match name {
        "example1_tent_sqrt" => vec![
            row!("periodic_half", EvidenceFor, "omega_2(1/2) = 1 - sqrt(1/4) = 1/2",
                |f| periodicity_check(f, 0.5, 2, 25, DEFAULT_TOL)),
            row!("periodic_quarter", Refuted, "omega_2(1/4) = 1 - sqrt(1/8), not 1/4",
                |f| periodicity_check(f, 0.25, 2, 25, DEFAULT_TOL)),
            row!("commutative", EvidenceAgainst, "f_1 and f_2 disagree in either order at 1/2",
                audit_verdict),
        ],
        "example2_powers" => vec![
            row!("li_yorke_pair", EvidenceFor, "odd steps push interior points toward 0, even steps pull them back",
                |f| li_yorke_classify(f, 0.3, 0.7, 200, LI_YORKE_LOW_TOL, 0.25)),
            row!("sensitive_at_one", EvidenceFor, "1 is fixed while (1-r)^(2n) tends to 0",
                |f| sensitivity(f, 1.0, 0.5, 200)),
            row!("commutative", EvidenceFor, "powers commute under composition", audit_verdict),
        ],
        "circle_settling" => vec![
            row!("almost_periodic_points", EvidenceAgainst, "displacements settle near 1/2, so returns to 0 stop",
                |f| almost_periodicity_report(f, 0.0, 0.3, 20)),
            row!("minimal", Certified, "omega_1..omega_4 generate the multiples of 1/8",
                |f| minimality(f, 1, 8, 6, 8)),
        ],
        "circle_ex4" => vec![
            row!("minimal", Certified, "omega_9 = 1/8 generates the eighths",
                |f| minimality(f, 1, 8, 9, 8)),
            row!("periodic", Certified, "omega_(2j) = 0 for every j",
                |f| periodicity_check(f, 0.3, 2, 50, DEFAULT_TOL)),
            row!("transitive", EvidenceAgainst, "orbit displacements are 0 and +-2^-k only",
                |f| transitivity(f, 1.0 / 16.0, 64)),
        ],
        "circle_harmonic" => vec![
            row!("transitive", EvidenceFor, "H_k mod 1 is dense with steps 1/k",
                |f| orbit_density(f, 0.0, 0.05, 120)),
            row!("two_transitive", EvidenceAgainst, "pairs of steps cancel: blocks of length 2 are the identity",
                |f| r_transitivity_check(f, 2, &TransitivityParams::new(0.05, 60, 8))),
            row!("periodic", Certified, "omega_(2k) = 0",
                |f| periodicity_check(f, 0.5, 2, 50, DEFAULT_TOL)),
            row!("equicontinuous", EvidenceFor, "every omega_n is a rotation",
                |f| equicontinuity_modulus(f, 0.1, 50, 8)),
            row!("sensitive", EvidenceAgainst, "rotations keep ball diameters fixed",
                |f| sensitivity(f, 0.5, 0.125, 120)),
        ],
        "interval_square_sqrt" => vec![
            row!("minimal", Refuted, "0 is fixed by every map, so its hull is {0}",
                |f| minimality(f, 1, 10, 4, 4)),
            row!("periodic", EvidenceFor, "f_2 undoes f_1, so omega_(2j) is the identity",
                |f| periodicity_check(f, 0.5, 2, 25, DEFAULT_TOL)),
        ],
        "identity" => vec![
            row!("transitive", EvidenceAgainst, "orbits are single points",
                |f| transitivity(f, 0.1, 20)),
            row!("equicontinuous", EvidenceFor, "the identity is an isometry",
                |f| equicontinuity_modulus(f, 0.1, 20, 8)),
            row!("sensitive", EvidenceAgainst, "the identity never expands a ball",
                |f| sensitivity(f, 0.5, 0.125, 20)),
        ],
        _ => Vec::new(),
    }
}

/// Looks up a corpus family by its stable name.
pub fn corpus(name: &str) -> Result<CorpusEntry> {
    let &name = CORPUS_NAMES
        .iter()
        .find(|&&n| n == name)
        .ok_or_else(|| Error::UnknownFamily(name.to_string()))?;
    let family = match name {
        "example1_tent_sqrt" => tent_sqrt(),
        "example2_powers" => powers(),
        "circle_settling" => MapFamily::from_rotations(settling_exact()),
        "circle_ex4" => MapFamily::from_rotations(ex4_exact()),
        "circle_harmonic" => MapFamily::from_rotations(harmonic_exact()),
        "interval_square_sqrt" => square_sqrt(),
        _ => MapFamily::from_rotations(identity_exact()),
    };
    Ok(CorpusEntry {
        name,
        summary: summary(name),
        family,
        expected: expectations(name),
    })
}

/// `(name, summary)` for every corpus family.
pub fn list_corpus() -> Vec<(&'static str, &'static str)> {
    CORPUS_NAMES.iter().map(|&n| (n, summary(n))).collect()
}
