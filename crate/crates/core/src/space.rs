//! The two phase spaces: the unit interval `[0, 1]` and the circle `[0, 1)`
//! measured in turns.

use std::fmt;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SpaceKind {
    UnitInterval,
    Circle,
}

impl SpaceKind {
    pub fn contains(self, x: f64) -> bool {
        match self {
            SpaceKind::UnitInterval => (0.0..=1.0).contains(&x),
            SpaceKind::Circle => (0.0..1.0).contains(&x),
        }
    }

    pub fn metric(self, x: f64, y: f64) -> f64 {
        let d = (x - y).abs();
        match self {
            SpaceKind::UnitInterval => d,
            SpaceKind::Circle => d.min(1.0 - d),
        }
    }

    pub fn diameter(self) -> f64 {
        match self {
            SpaceKind::UnitInterval => 1.0,
            SpaceKind::Circle => 0.5,
        }
    }

    /// Maps an arbitrary real onto the space: clamping on the interval,
    /// reduction mod 1 on the circle.
    pub fn normalize(self, x: f64) -> f64 {
        match self {
            SpaceKind::UnitInterval => x.clamp(0.0, 1.0),
            SpaceKind::Circle => wrap_turns(x),
        }
    }

    /// `count` evenly spaced points. Interval grids include both endpoints,
    /// circle grids are `j / count`.
    pub fn grid(self, count: usize) -> Vec<f64> {
        match (self, count) {
            (_, 0) => Vec::new(),
            (SpaceKind::UnitInterval, 1) => vec![0.5],
            (SpaceKind::UnitInterval, n) => {
                (0..n).map(|j| j as f64 / (n - 1) as f64).collect()
            }
            (SpaceKind::Circle, n) => (0..n).map(|j| j as f64 / n as f64).collect(),
        }
    }

    /// Uniform net with spacing at most `spacing`.
    pub fn net(self, spacing: f64) -> Vec<f64> {
        let cells = (1.0 / spacing).ceil().max(1.0) as usize;
        match self {
            SpaceKind::UnitInterval => self.grid(cells + 1),
            SpaceKind::Circle => self.grid(cells),
        }
    }

    /// Number of cells of the net built by [`SpaceKind::net`].
    pub fn net_cells(spacing: f64) -> usize {
        (1.0 / spacing).ceil().max(1.0) as usize
    }
}

impl fmt::Display for SpaceKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SpaceKind::UnitInterval => f.write_str("unit_interval"),
            SpaceKind::Circle => f.write_str("circle"),
        }
    }
}

pub(crate) fn wrap_turns(x: f64) -> f64 {
    let y = x - x.floor();
    if y >= 1.0 {
        0.0
    } else {
        y
    }
}

/// Radical inverse of `index` in `base` (van der Corput sequence).
pub fn radical_inverse(mut index: u64, base: u64) -> f64 {
    let mut inv_base = 1.0 / base as f64;
    let mut value = 0.0;
    while index > 0 {
        value += (index % base) as f64 * inv_base;
        index /= base;
        inv_base /= base as f64;
    }
    value
}

/// Two-dimensional Halton point (bases 2 and 3).
pub fn halton_2d(index: u64) -> (f64, f64) {
    (radical_inverse(index, 2), radical_inverse(index, 3))
}
