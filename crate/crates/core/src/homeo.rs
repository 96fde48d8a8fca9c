//! Invertible self-maps of the interval and the circle.

use std::fmt;

use num_integer::Integer;

use crate::error::{Error, Result};
use crate::space::{wrap_turns, SpaceKind};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Direction {
    Forward,
    Inverse,
}

/// Strictly increasing piecewise-linear homeomorphism of `[0, 1]`.
///
/// Stored as its breakpoints `(x, f(x))`; evaluation at an interior
/// breakpoint uses the left piece.
#[derive(Debug, Clone, PartialEq)]
pub struct PiecewiseLinear {
    breakpoints: Vec<(f64, f64)>,
}

/// One affine piece `slope * x + intercept` on `[start, end]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LinearPiece {
    pub start: f64,
    pub end: f64,
    pub slope: f64,
    pub intercept: f64,
}

impl LinearPiece {
    pub fn at(&self, x: f64) -> f64 {
        self.slope * x + self.intercept
    }
}

const CONTINUITY_TOL: f64 = 1e-12;

impl PiecewiseLinear {
    pub fn new(breakpoints: Vec<(f64, f64)>) -> Result<Self> {
        if breakpoints.len() < 2 {
            return Err(Error::Construction(
                "piecewise-linear map needs at least two breakpoints".into(),
            ));
        }
        let (x0, y0) = breakpoints[0];
        let (xn, yn) = breakpoints[breakpoints.len() - 1];
        if x0 != 0.0 || xn != 1.0 {
            return Err(Error::Construction(format!(
                "breakpoints must span [0, 1], got [{x0}, {xn}]"
            )));
        }
        if y0 != 0.0 || yn != 1.0 {
            return Err(Error::Construction(format!(
                "an increasing homeomorphism of [0, 1] fixes both ends, got f(0)={y0}, f(1)={yn}"
            )));
        }
        for w in breakpoints.windows(2) {
            let ((xa, ya), (xb, yb)) = (w[0], w[1]);
            if !(xb > xa) || !(yb > ya) {
                return Err(Error::Construction(format!(
                    "breakpoints not strictly increasing between ({xa}, {ya}) and ({xb}, {yb})"
                )));
            }
        }
        Ok(Self { breakpoints })
    }

    /// Builds the map from affine pieces, checking that consecutive pieces
    /// share their endpoints and agree there.
    pub fn from_pieces(pieces: &[LinearPiece]) -> Result<Self> {
        let first = pieces
            .first()
            .ok_or_else(|| Error::Construction("no pieces".into()))?;
        let mut breakpoints = vec![(first.start, first.at(first.start))];
        for (i, piece) in pieces.iter().enumerate() {
            if let Some(next) = pieces.get(i + 1) {
                if piece.end != next.start {
                    return Err(Error::Construction(format!(
                        "piece {i} ends at {} but piece {} starts at {}",
                        piece.end,
                        i + 1,
                        next.start
                    )));
                }
                let (left, right) = (piece.at(piece.end), next.at(next.start));
                if (left - right).abs() > CONTINUITY_TOL {
                    return Err(Error::Construction(format!(
                        "discontinuity at x={}: left {left}, right {right}",
                        piece.end
                    )));
                }
            }
            breakpoints.push((piece.end, piece.at(piece.end)));
        }
        Self::new(breakpoints)
    }

    pub fn breakpoints(&self) -> &[(f64, f64)] {
        &self.breakpoints
    }

    fn interpolate(points: impl Iterator<Item = (f64, f64)> + Clone, x: f64) -> f64 {
        let mut prev: Option<(f64, f64)> = None;
        for (a, b) in points {
            if let Some((pa, pb)) = prev {
                if x <= a {
                    let t = (x - pa) / (a - pa);
                    return (pb + t * (b - pb)).clamp(0.0, 1.0);
                }
            } else if x <= a {
                return b;
            }
            prev = Some((a, b));
        }
        1.0
    }

    fn forward(&self, x: f64) -> f64 {
        Self::interpolate(self.breakpoints.iter().copied(), x)
    }

    fn inverse(&self, y: f64) -> f64 {
        Self::interpolate(self.breakpoints.iter().map(|&(a, b)| (b, a)), y)
    }
}

/// `x ↦ x^(num/den)` on `[0, 1]`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PowerMap {
    num: u64,
    den: u64,
}

impl PowerMap {
    pub fn new(num: u64, den: u64) -> Result<Self> {
        if num == 0 || den == 0 {
            return Err(Error::Construction(format!(
                "power exponent must be a positive rational, got {num}/{den}"
            )));
        }
        let g = num.gcd(&den);
        Ok(Self {
            num: num / g,
            den: den / g,
        })
    }

    pub fn exponent(&self) -> (u64, u64) {
        (self.num, self.den)
    }

    fn apply(num: u64, den: u64, x: f64) -> f64 {
        // 0 and 1 are fixed exactly.
        if x == 0.0 || x == 1.0 {
            return x;
        }
        match (num, den) {
            (1, 1) => x,
            (1, 2) => x.sqrt(),
            (p, 1) if p <= i32::MAX as u64 => x.powi(p as i32),
            (p, q) => (x.ln() * (p as f64 / q as f64)).exp().min(1.0),
        }
    }
}

/// Rotation of the circle by `angle` turns.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CircleRotation {
    angle: f64,
}

impl CircleRotation {
    pub fn new(angle: f64) -> Self {
        Self {
            angle: wrap_turns(angle),
        }
    }

    pub fn angle(&self) -> f64 {
        self.angle
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum Homeomorphism {
    PiecewiseLinear(PiecewiseLinear),
    Power(PowerMap),
    Rotation(CircleRotation),
    /// `x ↦ 1 - x` on `[0, 1]`, the orientation-reversing involution.
    Reflection,
    /// Applied left to right: the first entry acts first.
    Composite(Vec<Homeomorphism>),
}

impl Homeomorphism {
    pub fn power(num: u64, den: u64) -> Result<Self> {
        PowerMap::new(num, den).map(Homeomorphism::Power)
    }

    pub fn rotation(angle: f64) -> Self {
        Homeomorphism::Rotation(CircleRotation::new(angle))
    }

    pub fn identity_rotation() -> Self {
        Homeomorphism::Rotation(CircleRotation { angle: 0.0 })
    }

    /// Space the map acts on; `None` for an empty composite, which is the
    /// identity of either space.
    pub fn space(&self) -> Option<SpaceKind> {
        match self {
            Homeomorphism::PiecewiseLinear(_)
            | Homeomorphism::Power(_)
            | Homeomorphism::Reflection => Some(SpaceKind::UnitInterval),
            Homeomorphism::Rotation(_) => Some(SpaceKind::Circle),
            Homeomorphism::Composite(parts) => parts.iter().find_map(Homeomorphism::space),
        }
    }

    /// Checks that every part of a composite lives on the same space.
    pub fn validate(&self) -> Result<()> {
        if let Homeomorphism::Composite(parts) = self {
            let mut seen: Option<SpaceKind> = None;
            for part in parts {
                part.validate()?;
                match (seen, part.space()) {
                    (Some(a), Some(b)) if a != b => {
                        return Err(Error::Construction(format!(
                            "composite mixes {a} and {b} maps"
                        )))
                    }
                    (None, s) => seen = s,
                    _ => {}
                }
            }
        }
        Ok(())
    }

    pub fn eval(&self, x: f64, direction: Direction) -> Result<f64> {
        if let Some(space) = self.space() {
            if !space.contains(x) {
                return Err(Error::Domain { x, space });
            }
        }
        Ok(self.eval_unchecked(x, direction))
    }

    pub fn forward(&self, x: f64) -> Result<f64> {
        self.eval(x, Direction::Forward)
    }

    pub fn inverse(&self, x: f64) -> Result<f64> {
        self.eval(x, Direction::Inverse)
    }

    /// Evaluation without the domain check; callers guarantee `x` is in
    /// the space.
    pub(crate) fn eval_unchecked(&self, x: f64, direction: Direction) -> f64 {
        use Direction::*;
        match (self, direction) {
            (Homeomorphism::PiecewiseLinear(p), Forward) => p.forward(x),
            (Homeomorphism::PiecewiseLinear(p), Inverse) => p.inverse(x),
            (Homeomorphism::Power(p), Forward) => PowerMap::apply(p.num, p.den, x),
            (Homeomorphism::Power(p), Inverse) => PowerMap::apply(p.den, p.num, x),
            (Homeomorphism::Rotation(r), Forward) => wrap_turns(x + r.angle),
            (Homeomorphism::Rotation(r), Inverse) => wrap_turns(x - r.angle),
            (Homeomorphism::Reflection, _) => 1.0 - x,
            (Homeomorphism::Composite(parts), Forward) => parts
                .iter()
                .fold(x, |acc, h| h.eval_unchecked(acc, Forward)),
            (Homeomorphism::Composite(parts), Inverse) => parts
                .iter()
                .rev()
                .fold(x, |acc, h| h.eval_unchecked(acc, Inverse)),
        }
    }
}

impl fmt::Display for Homeomorphism {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Homeomorphism::PiecewiseLinear(p) => {
                write!(f, "pl[")?;
                for (i, (x, y)) in p.breakpoints.iter().enumerate() {
                    if i > 0 {
                        write!(f, " ")?;
                    }
                    write!(f, "({x},{y})")?;
                }
                write!(f, "]")
            }
            Homeomorphism::Power(p) if p.den == 1 => write!(f, "x^{}", p.num),
            Homeomorphism::Power(p) => write!(f, "x^({}/{})", p.num, p.den),
            Homeomorphism::Rotation(r) => write!(f, "rot({})", r.angle),
            Homeomorphism::Reflection => write!(f, "1-x"),
            Homeomorphism::Composite(parts) => {
                write!(f, "(")?;
                for (i, h) in parts.iter().enumerate() {
                    if i > 0 {
                        write!(f, " ; ")?;
                    }
                    write!(f, "{h}")?;
                }
                write!(f, ")")
            }
        }
    }
}
