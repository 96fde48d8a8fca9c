//! Exact arithmetic on the circle group ℚ/ℤ for rotation families.
//!
//! Rotation families are point-independent: `ω_n` is the rotation by the
//! prefix sum of the step angles, so periodicity and hull density reduce to
//! statements about rationals mod 1 that can be decided exactly.

use std::collections::{BTreeSet, VecDeque};
use std::fmt;
use std::str::FromStr;
use std::sync::{Arc, Mutex};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// A rational point of the circle, reduced into `[0, 1)`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct RationalAngle(BigRational);

impl RationalAngle {
    pub fn new(value: BigRational) -> Self {
        let floor = value.floor();
        RationalAngle(value - floor)
    }

    pub fn from_ratio(num: i64, den: i64) -> Self {
        Self::new(BigRational::new(BigInt::from(num), BigInt::from(den)))
    }

    pub fn zero() -> Self {
        RationalAngle(BigRational::zero())
    }

    /// Exact value of a finite `f64` (every float is a dyadic rational).
    pub fn from_f64(x: f64) -> Option<Self> {
        BigRational::from_float(x).map(Self::new)
    }

    pub fn value(&self) -> &BigRational {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn to_f64(&self) -> f64 {
        let v = self.0.to_f64().unwrap_or(0.0);
        if v >= 1.0 {
            0.0
        } else {
            v
        }
    }

    pub fn neg(&self) -> Self {
        Self::new(-self.0.clone())
    }

    pub fn add(&self, other: &Self) -> Self {
        Self::new(&self.0 + &other.0)
    }

    pub fn sub(&self, other: &Self) -> Self {
        Self::new(&self.0 - &other.0)
    }

    /// Circle distance `min(|a - b|, 1 - |a - b|)`, exact.
    pub fn distance(&self, other: &Self) -> BigRational {
        let d = (&self.0 - &other.0).abs();
        let complement = BigRational::one() - &d;
        if complement < d {
            complement
        } else {
            d
        }
    }

    pub fn denominator_bits(&self) -> u64 {
        self.0.denom().bits()
    }
}

impl fmt::Display for RationalAngle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", format_rational(&self.0))
    }
}

/// `p/q`, or just `p` when `q = 1`.
pub fn format_rational(value: &BigRational) -> String {
    if value.denom().is_one() {
        value.numer().to_string()
    } else {
        format!("{}/{}", value.numer(), value.denom())
    }
}

/// Parses `p/q`, an integer, or a plain decimal such as `-0.125` into an
/// exact rational. Decimals are read digit by digit and never pass through
/// a float.
pub fn parse_rational(text: &str) -> Result<BigRational> {
    let text = text.trim();
    let bad = || Error::InvalidArgument(format!("`{text}` is not a rational number"));
    if let Some((num, den)) = text.split_once('/') {
        let num = BigInt::from_str(num.trim()).map_err(|_| bad())?;
        let den = BigInt::from_str(den.trim()).map_err(|_| bad())?;
        if den.is_zero() {
            return Err(bad());
        }
        return Ok(BigRational::new(num, den));
    }
    let (mantissa, exponent) = match text.find(['e', 'E']) {
        Some(i) => (&text[..i], text[i + 1..].parse::<i32>().map_err(|_| bad())?),
        None => (text, 0),
    };
    let (int_part, frac_part) = mantissa.split_once('.').unwrap_or((mantissa, ""));
    if int_part.is_empty() && frac_part.is_empty() {
        return Err(bad());
    }
    let negative = int_part.starts_with('-');
    let int_digits = int_part.trim_start_matches(['-', '+']);
    if !int_digits.chars().chain(frac_part.chars()).all(|c| c.is_ascii_digit()) {
        return Err(bad());
    }
    let digits = format!("{int_digits}{frac_part}");
    let mut numer = BigInt::from_str(if digits.is_empty() { "0" } else { &digits }).map_err(|_| bad())?;
    if negative {
        numer = -numer;
    }
    let scale = exponent - frac_part.len() as i32;
    let ten = BigInt::from(10u32);
    Ok(if scale >= 0 {
        BigRational::from_integer(numer * num_traits::pow(ten, scale as usize))
    } else {
        BigRational::new(numer, num_traits::pow(ten, (-scale) as usize))
    })
}

type AngleRule = dyn Fn(u64) -> Result<RationalAngle> + Send + Sync;

/// Denominator-size cap guarding exact computations.
pub const DEFAULT_MAX_DENOMINATOR_BITS: u64 = 8192;

#[derive(Default)]
struct ExactMemo {
    steps: Vec<RationalAngle>,
    prefix: Vec<RationalAngle>,
}

/// A family of circle rotations with exact rational step angles.
///
/// `rule(n)` is the displacement of `f_n` for `n ≥ 1`. Prefix sums are
/// memoised internally; the family is otherwise immutable.
#[derive(Clone)]
pub struct RationalRotationFamily {
    name: String,
    rule: Arc<AngleRule>,
    memo: Arc<Mutex<ExactMemo>>,
    max_denominator_bits: u64,
}

impl fmt::Debug for RationalRotationFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("RationalRotationFamily")
            .field("name", &self.name)
            .finish_non_exhaustive()
    }
}

impl RationalRotationFamily {
    pub fn new(
        name: impl Into<String>,
        rule: impl Fn(u64) -> RationalAngle + Send + Sync + 'static,
    ) -> Self {
        Self::new_fallible(name, move |n| Ok(rule(n)))
    }

    pub fn new_fallible(
        name: impl Into<String>,
        rule: impl Fn(u64) -> Result<RationalAngle> + Send + Sync + 'static,
    ) -> Self {
        Self {
            name: name.into(),
            rule: Arc::new(rule),
            memo: Arc::new(Mutex::new(ExactMemo::default())),
            max_denominator_bits: DEFAULT_MAX_DENOMINATOR_BITS,
        }
    }

    pub fn with_max_denominator_bits(mut self, bits: u64) -> Self {
        self.max_denominator_bits = bits;
        self.memo = Arc::new(Mutex::new(ExactMemo::default()));
        self
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    /// Exact step angle of `f_n`, `n ≥ 1`.
    pub fn step(&self, n: u64) -> Result<RationalAngle> {
        if n == 0 {
            return Err(Error::InvalidArgument("maps are indexed from 1".into()));
        }
        self.extend_to(n)?;
        let memo = self.memo.lock().expect("exact memo poisoned");
        Ok(memo.steps[(n - 1) as usize].clone())
    }

    fn extend_to(&self, n: u64) -> Result<()> {
        let mut memo = self.memo.lock().expect("exact memo poisoned");
        while (memo.steps.len() as u64) < n {
            let index = memo.steps.len() as u64 + 1;
            let step = (self.rule)(index)?;
            let total = match memo.prefix.last() {
                Some(prev) => prev.add(&step),
                None => step.clone(),
            };
            if total.denominator_bits() > self.max_denominator_bits
                || step.denominator_bits() > self.max_denominator_bits
            {
                return Err(Error::Budget(format!(
                    "exact displacement of `{}` at n={index} exceeds {} denominator bits",
                    self.name, self.max_denominator_bits
                )));
            }
            memo.steps.push(step);
            memo.prefix.push(total);
        }
        Ok(())
    }

    /// Exact displacement of `ω_n`: the prefix sum of step angles for
    /// `n ≥ 1`, zero at `n = 0`, and the negation for `n < 0`.
    pub fn displacement(&self, n: i64) -> Result<RationalAngle> {
        if n == 0 {
            return Ok(RationalAngle::zero());
        }
        let k = n.unsigned_abs();
        self.extend_to(k)?;
        let memo = self.memo.lock().expect("exact memo poisoned");
        let d = memo.prefix[(k - 1) as usize].clone();
        Ok(if n > 0 { d } else { d.neg() })
    }

    /// Exact view of the block family: block `k` is the sum of steps
    /// `(k-1)r+1 ..= kr`.
    pub fn blocks(&self, r: u64) -> Result<RationalRotationFamily> {
        if r == 0 {
            return Err(Error::InvalidArgument("block length must be at least 1".into()));
        }
        let base = self.clone();
        let mut fam =
            RationalRotationFamily::new_fallible(format!("{}/blocks{r}", self.name), move |k| {
                let hi = base.displacement((k * r) as i64)?;
                let lo = base.displacement(((k - 1) * r) as i64)?;
                Ok(hi.sub(&lo))
            });
        fam.max_denominator_bits = self.max_denominator_bits;
        Ok(fam)
    }
}

/// Outcome of an exact periodicity check.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ExactPeriodicity {
    Certificate,
    Refutation { n: i64, displacement: RationalAngle },
}

/// Certifies `ω_{jr} = id` for all `|j| ≤ horizon`, or returns the first
/// failing `jr` (least `|j|`, positive before negative).
pub fn exact_periodicity(
    fam: &RationalRotationFamily,
    r: u64,
    horizon: u64,
) -> Result<ExactPeriodicity> {
    if r == 0 {
        return Err(Error::InvalidArgument("period must be at least 1".into()));
    }
    for j in 1..=horizon as i64 {
        for n in [j * r as i64, -j * r as i64] {
            let d = fam.displacement(n)?;
            if !d.is_zero() {
                return Ok(ExactPeriodicity::Refutation { n, displacement: d });
            }
        }
    }
    Ok(ExactPeriodicity::Certificate)
}

/// Exact truncated hull displacements.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExactHull {
    pub displacements: BTreeSet<RationalAngle>,
    pub budget_exhausted: bool,
    /// No new displacement appeared before `depth` levels, so the set is
    /// the full subgroup generated by the `ω_r`, `|r| ≤ order_k`.
    pub closed: bool,
}

/// All sums of at most `depth` displacements `ω_r`, `|r| ≤ order_k`,
/// reduced mod 1. The empty sum contributes 0.
pub fn exact_hull_displacements(
    fam: &RationalRotationFamily,
    order_k: u64,
    depth: u64,
    max_size: usize,
) -> Result<ExactHull> {
    if order_k == 0 || depth == 0 {
        return Err(Error::InvalidArgument("order and depth must be at least 1".into()));
    }
    let k = order_k as i64;
    let mut generators = BTreeSet::new();
    for r in -k..=k {
        generators.insert(fam.displacement(r)?);
    }
    let mut seen = BTreeSet::new();
    seen.insert(RationalAngle::zero());
    let mut frontier: VecDeque<RationalAngle> = VecDeque::from([RationalAngle::zero()]);
    let mut closed = false;
    for _ in 0..depth {
        let mut next = VecDeque::new();
        for base in &frontier {
            for g in &generators {
                let p = base.add(g);
                if seen.contains(&p) {
                    continue;
                }
                if seen.len() >= max_size {
                    return Ok(ExactHull {
                        displacements: seen,
                        budget_exhausted: true,
                        closed: false,
                    });
                }
                seen.insert(p.clone());
                next.push_back(p);
            }
        }
        if next.is_empty() {
            closed = true;
            break;
        }
        frontier = next;
    }
    Ok(ExactHull {
        displacements: seen,
        budget_exhausted: false,
        closed,
    })
}

/// Largest circular gap between consecutive angles of a non-empty set.
pub fn exact_density_gap(angles: &BTreeSet<RationalAngle>) -> Result<BigRational> {
    let first = angles
        .iter()
        .next()
        .ok_or_else(|| Error::InvalidArgument("density gap of an empty set".into()))?;
    let last = angles.iter().next_back().expect("non-empty");
    let mut gap = BigRational::one() - last.value() + first.value();
    for (a, b) in angles.iter().zip(angles.iter().skip(1)) {
        let g = b.value() - a.value();
        if g > gap {
            gap = g;
        }
    }
    Ok(gap)
}

/// Exact harmonic number `H_k`.
pub fn harmonic_number(k: u64) -> BigRational {
    (1..=k).fold(BigRational::zero(), |acc, i| {
        acc + BigRational::new(BigInt::one(), BigInt::from(i))
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> RationalAngle {
        RationalAngle::from_ratio(n, d)
    }

    fn cycle(name: &str, angles: Vec<RationalAngle>) -> RationalRotationFamily {
        RationalRotationFamily::new(name, move |n| angles[((n - 1) as usize) % angles.len()].clone())
    }

    #[test]
    fn angles_reduce_into_unit_interval() {
        assert_eq!(q(3, 2), q(1, 2));
        assert_eq!(q(-1, 4), q(3, 4));
        assert_eq!(q(1, 1), RationalAngle::zero());
        assert_eq!(q(6, 8).value(), &BigRational::new(3.into(), 4.into()));
    }

    #[test]
    fn circle_distance_is_exact() {
        assert_eq!(q(1, 8).distance(&q(7, 8)), BigRational::new(1.into(), 4.into()));
    }

    #[test]
    fn parse_rationals() {
        assert_eq!(parse_rational("1/8").unwrap(), BigRational::new(1.into(), 8.into()));
        assert_eq!(parse_rational("0.1").unwrap(), BigRational::new(1.into(), 10.into()));
        assert_eq!(parse_rational("-2.5").unwrap(), BigRational::new((-5).into(), 2.into()));
        assert_eq!(parse_rational("1e-3").unwrap(), BigRational::new(1.into(), 1000.into()));
        assert_eq!(parse_rational("7").unwrap(), BigRational::from_integer(7.into()));
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("abc").is_err());
        assert!(parse_rational("").is_err());
    }

    #[test]
    fn density_gaps() {
        let set = |v: Vec<RationalAngle>| v.into_iter().collect::<BTreeSet<_>>();
        assert_eq!(exact_density_gap(&set(vec![q(0, 1)])).unwrap(), BigRational::one());
        assert_eq!(
            exact_density_gap(&set(vec![q(0, 1), q(1, 2)])).unwrap(),
            BigRational::new(1.into(), 2.into())
        );
        assert_eq!(
            exact_density_gap(&set((0..8).map(|j| q(j, 8)).collect())).unwrap(),
            BigRational::new(1.into(), 8.into())
        );
        assert!(exact_density_gap(&BTreeSet::new()).is_err());
    }

    #[test]
    fn displacement_negation() {
        let fam = cycle("c", vec![q(1, 3), q(1, 5)]);
        for n in 0..40 {
            assert!(fam.displacement(n).unwrap().add(&fam.displacement(-n).unwrap()).is_zero());
        }
        assert_eq!(fam.displacement(2).unwrap(), q(8, 15));
    }

    #[test]
    fn periodicity_certificate_and_refutation() {
        let fam = cycle("flip", vec![q(1, 2), q(-1, 2)]);
        assert_eq!(exact_periodicity(&fam, 2, 50).unwrap(), ExactPeriodicity::Certificate);
        assert_eq!(
            exact_periodicity(&fam, 1, 50).unwrap(),
            ExactPeriodicity::Refutation { n: 1, displacement: q(1, 2) }
        );
    }

    #[test]
    fn hull_with_trivial_generators_is_zero() {
        let fam = cycle("id", vec![q(0, 1)]);
        let hull = exact_hull_displacements(&fam, 3, 4, 100).unwrap();
        assert_eq!(hull.displacements.len(), 1);
        assert!(!hull.budget_exhausted);
    }

    #[test]
    fn hull_budget_is_reported() {
        let fam = cycle("c", vec![q(1, 1000)]);
        let hull = exact_hull_displacements(&fam, 1, 500, 10).unwrap();
        assert!(hull.budget_exhausted);
        assert_eq!(hull.displacements.len(), 10);
    }

    #[test]
    fn denominator_budget_aborts() {
        let fam = RationalRotationFamily::new("h", |k| RationalAngle::new(harmonic_number(k)))
            .with_max_denominator_bits(16);
        assert!(matches!(fam.displacement(100), Err(Error::Budget(_))));
    }

    #[test]
    fn harmonic_numbers() {
        assert_eq!(harmonic_number(2), BigRational::new(3.into(), 2.into()));
        assert_eq!(harmonic_number(4), BigRational::new(25.into(), 12.into()));
    }

    #[test]
    fn blocks_sum_steps() {
        let fam = cycle("c", vec![q(1, 4), q(1, 8), q(1, 16)]);
        let b = fam.blocks(2).unwrap();
        assert_eq!(b.step(1).unwrap(), q(3, 8));
        assert_eq!(b.step(2).unwrap(), q(1, 16).add(&q(1, 4)));
    }
}
