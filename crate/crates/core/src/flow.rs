//! The two-sided flow `ω_n` and orbit windows.
//!
//! `ω_n = f_n ∘ … ∘ f_1` for `n ≥ 1`, `ω_0 = id`, and
//! `ω_{-n} = (ω_n)^{-1} = f_1^{-1} ∘ … ∘ f_n^{-1}`.

use std::collections::HashMap;
use std::sync::Mutex;

use crate::error::{Error, Result};
use crate::family::MapFamily;
use crate::homeo::Direction;

fn check_point(family: &MapFamily, x: f64) -> Result<()> {
    if family.space().contains(x) {
        Ok(())
    } else {
        Err(Error::Domain {
            x,
            space: family.space(),
        })
    }
}

fn check_horizon(family: &MapFamily, n: u64) -> Result<()> {
    if n > family.horizon() {
        Err(Error::Budget(format!(
            "|n| = {n} exceeds horizon {} of `{}`",
            family.horizon(),
            family.name()
        )))
    } else {
        Ok(())
    }
}

/// `ω_n(x)`.
pub fn omega(family: &MapFamily, n: i64, x: f64) -> Result<f64> {
    check_point(family, x)?;
    let k = n.unsigned_abs();
    check_horizon(family, k)?;
    let maps = family.maps_upto(k)?;
    Ok(if n >= 0 {
        maps.iter()
            .fold(x, |acc, f| f.eval_unchecked(acc, Direction::Forward))
    } else {
        maps.iter()
            .rev()
            .fold(x, |acc, f| f.eval_unchecked(acc, Direction::Inverse))
    })
}

/// `ω_n(x)` for every `n ∈ [-radius, radius]`.
#[derive(Debug, Clone, PartialEq)]
pub struct OrbitWindow {
    radius: u64,
    values: Vec<f64>,
}

impl OrbitWindow {
    pub fn compute(family: &MapFamily, x: f64, radius: u64) -> Result<Self> {
        check_point(family, x)?;
        check_horizon(family, radius)?;
        let maps = family.maps_upto(radius)?;
        let r = radius as usize;
        let mut values = vec![0.0; 2 * r + 1];
        values[r] = x;
        let mut fwd = x;
        for (i, f) in maps.iter().enumerate() {
            fwd = f.eval_unchecked(fwd, Direction::Forward);
            values[r + i + 1] = fwd;
        }
        for k in 1..=r {
            values[r - k] = maps[..k]
                .iter()
                .rev()
                .fold(x, |acc, f| f.eval_unchecked(acc, Direction::Inverse));
        }
        Ok(Self { radius, values })
    }

    pub fn radius(&self) -> u64 {
        self.radius
    }

    pub fn base(&self) -> f64 {
        self.values[self.radius as usize]
    }

    /// `ω_n(x)`; panics if `|n|` exceeds the radius.
    pub fn at(&self, n: i64) -> f64 {
        self.values[(n + self.radius as i64) as usize]
    }

    /// `(n, ω_n(x))` with `n` ascending from `-radius`.
    pub fn entries(&self) -> impl Iterator<Item = (i64, f64)> + '_ {
        let r = self.radius as i64;
        self.values.iter().enumerate().map(move |(i, &v)| (i as i64 - r, v))
    }

    /// Times ordered by `|n|`, positive before negative, restricted to
    /// `|n| ≤ limit`.
    pub fn times_by_magnitude(&self, limit: u64) -> impl Iterator<Item = i64> {
        let limit = limit.min(self.radius) as i64;
        std::iter::once(0).chain((1..=limit).flat_map(|k| [k, -k]))
    }
}

/// `(n, ω_n(x))` for `n ∈ [-N, N]`, ascending.
pub fn orbit_window(family: &MapFamily, x: f64, radius: u64) -> Result<Vec<(i64, f64)>> {
    Ok(OrbitWindow::compute(family, x, radius)?.entries().collect())
}

#[derive(Debug, Default, Clone)]
struct Trajectory {
    /// `forward[n] = ω_n(x)`, `forward[0] = x`.
    forward: Vec<f64>,
    /// `backward[n] = ω_{-n}(x)`, `backward[0] = x`.
    backward: Vec<f64>,
}

/// Memo of trajectories keyed by base point.
///
/// Values are produced by the same evaluation order as [`omega`], so cached
/// and fresh results agree bit for bit. Safe to share between threads.
pub struct FlowCache {
    family: MapFamily,
    memo: Mutex<HashMap<u64, Trajectory>>,
}

impl FlowCache {
    pub fn new(family: MapFamily) -> Self {
        Self {
            family,
            memo: Mutex::new(HashMap::new()),
        }
    }

    pub fn family(&self) -> &MapFamily {
        &self.family
    }

    pub fn omega(&self, n: i64, x: f64) -> Result<f64> {
        check_point(&self.family, x)?;
        let k = n.unsigned_abs();
        check_horizon(&self.family, k)?;
        let key = x.to_bits();
        {
            let memo = self.memo.lock().expect("flow cache poisoned");
            if let Some(t) = memo.get(&key) {
                let side = if n >= 0 { &t.forward } else { &t.backward };
                if let Some(&v) = side.get(k as usize) {
                    return Ok(v);
                }
            }
        }
        let mut traj = self
            .memo
            .lock()
            .expect("flow cache poisoned")
            .get(&key)
            .cloned()
            .unwrap_or_else(|| Trajectory {
                forward: vec![x],
                backward: vec![x],
            });
        let maps = self.family.maps_upto(k)?;
        if n >= 0 {
            while traj.forward.len() <= k as usize {
                let i = traj.forward.len();
                let prev = traj.forward[i - 1];
                traj.forward.push(maps[i - 1].eval_unchecked(prev, Direction::Forward));
            }
        } else {
            while traj.backward.len() <= k as usize {
                let i = traj.backward.len();
                let v = maps[..i]
                    .iter()
                    .rev()
                    .fold(x, |acc, f| f.eval_unchecked(acc, Direction::Inverse));
                traj.backward.push(v);
            }
        }
        let value = if n >= 0 {
            traj.forward[k as usize]
        } else {
            traj.backward[k as usize]
        };
        let mut memo = self.memo.lock().expect("flow cache poisoned");
        let slot = memo.entry(key).or_default();
        if traj.forward.len() > slot.forward.len() {
            slot.forward = traj.forward;
        }
        if traj.backward.len() > slot.backward.len() {
            slot.backward = traj.backward;
        }
        Ok(value)
    }
}

/// Worst `d(ω_{-n}(ω_n(x)), x)` over the points and `1 ≤ n ≤ max_n`.
pub fn inversion_error(family: &MapFamily, points: &[f64], max_n: u64) -> Result<f64> {
    round_trip(family, points, max_n, 1)
}

/// Worst `d(ω_n(ω_{-n}(x)), x)`: the same check with the backward leg first.
///
/// Backward orbits that are attracted to the boundary of the interval can
/// round onto it exactly, after which no forward evaluation recovers `x`.
pub fn reverse_inversion_error(family: &MapFamily, points: &[f64], max_n: u64) -> Result<f64> {
    round_trip(family, points, max_n, -1)
}

fn round_trip(family: &MapFamily, points: &[f64], max_n: u64, sign: i64) -> Result<f64> {
    let space = family.space();
    let mut worst: f64 = 0.0;
    for &x in points {
        for n in 1..=max_n as i64 {
            let y = omega(family, sign * n, x)?;
            let back = omega(family, -sign * n, y)?;
            worst = worst.max(space.metric(back, x));
        }
    }
    Ok(worst)
}

/// Worst `|d(ω_n x, ω_n y) - d(x, y)|` over the given pairs and `|n| ≤ max_n`.
pub fn isometry_defect(family: &MapFamily, pairs: &[(f64, f64)], max_n: u64) -> Result<f64> {
    let space = family.space();
    let mut worst: f64 = 0.0;
    for &(x, y) in pairs {
        let wx = OrbitWindow::compute(family, x, max_n)?;
        let wy = OrbitWindow::compute(family, y, max_n)?;
        let d0 = space.metric(x, y);
        for ((_, a), (_, b)) in wx.entries().zip(wy.entries()) {
            worst = worst.max((space.metric(a, b) - d0).abs());
        }
    }
    Ok(worst)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::homeo::Homeomorphism;
    use crate::space::SpaceKind;

    fn identity() -> MapFamily {
        MapFamily::builder("id", SpaceKind::UnitInterval, |_| Homeomorphism::Composite(vec![]))
            .commutative(true)
            .isometric(true)
            .build()
    }

    fn drift() -> MapFamily {
        MapFamily::builder("drift", SpaceKind::Circle, |n| Homeomorphism::rotation(1.0 / (n as f64 + 2.0)))
            .build()
    }

    #[test]
    fn identity_window() {
        let w = orbit_window(&identity(), 0.3, 2).unwrap();
        assert_eq!(w.len(), 5);
        assert!(w.iter().all(|&(_, v)| v == 0.3));
        assert_eq!(w.first().unwrap().0, -2);
    }

    #[test]
    fn omega_zero_is_identity() {
        assert_eq!(omega(&drift(), 0, 0.7).unwrap(), 0.7);
    }

    #[test]
    fn horizon_and_domain_errors() {
        let fam = drift().with_horizon(10);
        assert!(matches!(omega(&fam, 11, 0.1), Err(Error::Budget(_))));
        assert!(matches!(omega(&fam, -11, 0.1), Err(Error::Budget(_))));
        assert!(matches!(omega(&fam, 1, 1.5), Err(Error::Domain { .. })));
    }

    #[test]
    fn window_matches_omega_bitwise() {
        let fam = drift();
        let w = OrbitWindow::compute(&fam, 0.123, 30).unwrap();
        for (n, v) in w.entries() {
            assert_eq!(v.to_bits(), omega(&fam, n, 0.123).unwrap().to_bits());
        }
    }

    #[test]
    fn cocycle() {
        let fam = drift();
        for n in 1..40 {
            let prev = omega(&fam, n - 1, 0.4).unwrap();
            let expect = fam.map(n as u64).unwrap().forward(prev).unwrap();
            assert_eq!(omega(&fam, n, 0.4).unwrap().to_bits(), expect.to_bits());
        }
    }

    #[test]
    fn cache_matches_fresh_values() {
        let fam = drift();
        let cache = FlowCache::new(fam.clone());
        for n in [5, -3, 12, -12, 0, 7, -20] {
            let cached = cache.omega(n, 0.25).unwrap();
            assert_eq!(cached.to_bits(), omega(&fam, n, 0.25).unwrap().to_bits());
            assert_eq!(cache.omega(n, 0.25).unwrap().to_bits(), cached.to_bits());
        }
    }

    #[test]
    fn cache_is_shareable_across_threads() {
        let fam = drift();
        let cache = std::sync::Arc::new(FlowCache::new(fam.clone()));
        let handles: Vec<_> = (0..4)
            .map(|t| {
                let cache = cache.clone();
                std::thread::spawn(move || {
                    (0..30).map(|n| cache.omega(n - 15 + t, 0.5).unwrap()).collect::<Vec<_>>()
                })
            })
            .collect();
        for (t, h) in handles.into_iter().enumerate() {
            for (i, v) in h.join().unwrap().into_iter().enumerate() {
                let n = i as i64 - 15 + t as i64;
                assert_eq!(v.to_bits(), omega(&fam, n, 0.5).unwrap().to_bits());
            }
        }
    }

    #[test]
    fn magnitude_order() {
        let w = OrbitWindow::compute(&identity(), 0.5, 3).unwrap();
        assert_eq!(w.times_by_magnitude(2).collect::<Vec<_>>(), vec![0, 1, -1, 2, -2]);
    }
}
