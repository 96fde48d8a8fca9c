//! Indexed families `n ↦ f_n` of homeomorphisms.

use std::fmt;
use std::sync::{Arc, RwLock};

use crate::error::{Error, Result};
use crate::exact::RationalRotationFamily;
use crate::homeo::{Direction, Homeomorphism};
use crate::space::SpaceKind;

type MapRule = dyn Fn(u64) -> Result<Homeomorphism> + Send + Sync;

/// Default bound on `|n|` for flow evaluation.
pub const DEFAULT_HORIZON: u64 = 100_000;

struct FamilyInner {
    name: String,
    space: SpaceKind,
    rule: Arc<MapRule>,
    declared_commutative: bool,
    declared_isometric: bool,
    horizon: u64,
    exact: Option<RationalRotationFamily>,
    maps: RwLock<Vec<Arc<Homeomorphism>>>,
}

/// The sequence of maps generating a non-autonomous system.
///
/// Cheap to clone; all clones share the memo of materialised maps.
#[derive(Clone)]
pub struct MapFamily {
    inner: Arc<FamilyInner>,
}

impl fmt::Debug for MapFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("MapFamily")
            .field("name", &self.inner.name)
            .field("space", &self.inner.space)
            .field("declared_commutative", &self.inner.declared_commutative)
            .field("declared_isometric", &self.inner.declared_isometric)
            .finish_non_exhaustive()
    }
}

pub struct MapFamilyBuilder {
    name: String,
    space: SpaceKind,
    rule: Arc<MapRule>,
    declared_commutative: bool,
    declared_isometric: bool,
    horizon: u64,
    exact: Option<RationalRotationFamily>,
}

impl MapFamilyBuilder {
    pub fn commutative(mut self, yes: bool) -> Self {
        self.declared_commutative = yes;
        self
    }

    pub fn isometric(mut self, yes: bool) -> Self {
        self.declared_isometric = yes;
        self
    }

    pub fn horizon(mut self, horizon: u64) -> Self {
        self.horizon = horizon;
        self
    }

    pub fn exact(mut self, exact: RationalRotationFamily) -> Self {
        self.exact = Some(exact);
        self
    }

    pub fn build(self) -> MapFamily {
        MapFamily {
            inner: Arc::new(FamilyInner {
                name: self.name,
                space: self.space,
                rule: self.rule,
                declared_commutative: self.declared_commutative,
                declared_isometric: self.declared_isometric,
                horizon: self.horizon,
                exact: self.exact,
                maps: RwLock::new(Vec::new()),
            }),
        }
    }
}

impl MapFamily {
    pub fn builder(
        name: impl Into<String>,
        space: SpaceKind,
        rule: impl Fn(u64) -> Homeomorphism + Send + Sync + 'static,
    ) -> MapFamilyBuilder {
        Self::builder_fallible(name, space, move |n| Ok(rule(n)))
    }

    pub fn builder_fallible(
        name: impl Into<String>,
        space: SpaceKind,
        rule: impl Fn(u64) -> Result<Homeomorphism> + Send + Sync + 'static,
    ) -> MapFamilyBuilder {
        MapFamilyBuilder {
            name: name.into(),
            space,
            rule: Arc::new(rule),
            declared_commutative: false,
            declared_isometric: false,
            horizon: DEFAULT_HORIZON,
            exact: None,
        }
    }

    /// Float rotation family derived from an exact one. Rotations commute
    /// and are isometries.
    pub fn from_rotations(exact: RationalRotationFamily) -> MapFamily {
        let steps = exact.clone();
        let name = exact.name().to_string();
        MapFamily::builder_fallible(name, SpaceKind::Circle, move |n| {
            Ok(Homeomorphism::rotation(steps.step(n)?.to_f64()))
        })
        .commutative(true)
        .isometric(true)
        .exact(exact)
        .build()
    }

    pub fn name(&self) -> &str {
        &self.inner.name
    }

    pub fn space(&self) -> SpaceKind {
        self.inner.space
    }

    pub fn declared_commutative(&self) -> bool {
        self.inner.declared_commutative
    }

    pub fn declared_isometric(&self) -> bool {
        self.inner.declared_isometric
    }

    pub fn horizon(&self) -> u64 {
        self.inner.horizon
    }

    pub fn exact(&self) -> Option<&RationalRotationFamily> {
        self.inner.exact.as_ref()
    }

    /// Copy of this family with a different horizon.
    pub fn with_horizon(&self, horizon: u64) -> MapFamily {
        let inner = &self.inner;
        MapFamily {
            inner: Arc::new(FamilyInner {
                name: inner.name.clone(),
                space: inner.space,
                rule: inner.rule.clone(),
                declared_commutative: inner.declared_commutative,
                declared_isometric: inner.declared_isometric,
                horizon,
                exact: inner.exact.clone(),
                maps: RwLock::new(Vec::new()),
            }),
        }
    }

    /// `f_n` for `n ≥ 1`.
    pub fn map(&self, n: u64) -> Result<Arc<Homeomorphism>> {
        if n == 0 {
            return Err(Error::InvalidArgument("maps are indexed from 1".into()));
        }
        if n > self.inner.horizon {
            return Err(Error::Budget(format!(
                "map index {n} exceeds horizon {} of `{}`",
                self.inner.horizon, self.inner.name
            )));
        }
        let idx = (n - 1) as usize;
        if let Some(h) = self.inner.maps.read().expect("map memo poisoned").get(idx) {
            return Ok(h.clone());
        }
        let mut maps = self.inner.maps.write().expect("map memo poisoned");
        while maps.len() <= idx {
            let h = (self.inner.rule)(maps.len() as u64 + 1)?;
            h.validate()?;
            if let Some(space) = h.space() {
                if space != self.inner.space {
                    return Err(Error::Construction(format!(
                        "f_{} of `{}` acts on {space}, family lives on {}",
                        maps.len() + 1,
                        self.inner.name,
                        self.inner.space
                    )));
                }
            }
            maps.push(Arc::new(h));
        }
        Ok(maps[idx].clone())
    }

    /// Materialises `f_1 ..= f_n`.
    pub(crate) fn maps_upto(&self, n: u64) -> Result<Vec<Arc<Homeomorphism>>> {
        if n == 0 {
            return Ok(Vec::new());
        }
        self.map(n)?;
        let maps = self.inner.maps.read().expect("map memo poisoned");
        Ok(maps[..n as usize].to_vec())
    }
}

/// The block family `F_r`: its `k`-th map is `f_{kr} ∘ … ∘ f_{(k-1)r+1}`.
pub fn block_family(family: &MapFamily, r: u64) -> Result<MapFamily> {
    if r == 0 {
        return Err(Error::InvalidArgument("block length must be at least 1".into()));
    }
    if r == 1 {
        return Ok(family.clone());
    }
    let base = family.clone();
    let horizon = family.horizon() / r;
    let mut builder = MapFamily::builder_fallible(
        format!("{}/blocks{r}", family.name()),
        family.space(),
        move |k| {
            let parts = ((k - 1) * r + 1..=k * r)
                .map(|i| base.map(i).map(|h| (*h).clone()))
                .collect::<Result<Vec<_>>>()?;
            Ok(Homeomorphism::Composite(parts))
        },
    )
    .commutative(family.declared_commutative())
    .isometric(family.declared_isometric())
    .horizon(horizon);
    if let Some(exact) = family.exact() {
        builder = builder.exact(exact.blocks(r)?);
    }
    Ok(builder.build())
}

/// Result of sampling `f_i ∘ f_j` against `f_j ∘ f_i`.
#[derive(Debug, Clone, PartialEq)]
pub struct CommutativityAudit {
    pub passes: bool,
    pub worst_distance: f64,
    /// `(i, j, x)` attaining the worst distance.
    pub worst: Option<(u64, u64, f64)>,
}

pub const COMMUTATIVITY_TOL: f64 = 1e-9;

/// Checks `d(f_i(f_j(x)), f_j(f_i(x))) ≤ 1e-9` for `i, j ≤ max_index` and
/// `grid` points.
pub fn commutativity_audit(
    family: &MapFamily,
    max_index: u64,
    grid: usize,
) -> Result<CommutativityAudit> {
    let space = family.space();
    let points = space.grid(grid);
    let maps = family.maps_upto(max_index)?;
    let mut worst_distance = 0.0;
    let mut worst = None;
    for i in 0..maps.len() {
        for j in i + 1..maps.len() {
            for &x in &points {
                let a = maps[i].eval_unchecked(maps[j].eval_unchecked(x, Direction::Forward), Direction::Forward);
                let b = maps[j].eval_unchecked(maps[i].eval_unchecked(x, Direction::Forward), Direction::Forward);
                let d = space.metric(a, b);
                if d > worst_distance {
                    worst_distance = d;
                    worst = Some((i as u64 + 1, j as u64 + 1, x));
                }
            }
        }
    }
    Ok(CommutativityAudit {
        passes: worst_distance <= COMMUTATIVITY_TOL,
        worst_distance,
        worst,
    })
}
