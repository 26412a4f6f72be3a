//! Functions between digital images, stored as explicit tables.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::lattice::{adjacent_or_equal, AdjacencyKind, DigitalImage, Point, PointSet};
use crate::scalar::Coord;

/// A total function `domain → codomain` given pointwise.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct PointMap<C: Coord> {
    domain: DigitalImage<C>,
    codomain: DigitalImage<C>,
    table: BTreeMap<Point<C>, Point<C>>,
}

/// One row of a map table in the structured format.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize, Deserialize)]
#[serde(bound = "")]
pub struct MapEntry<C: Coord> {
    pub from: Point<C>,
    pub to: Point<C>,
}

/// Structured (JSON) form of a map table.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
#[serde(bound = "")]
pub struct MapDocument<C: Coord> {
    pub adjacency: AdjacencyKind,
    pub entries: Vec<MapEntry<C>>,
}

impl<C: Coord> Serialize for PointMap<C> {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        MapDocument {
            adjacency: self.domain.adjacency(),
            entries: self.entries(),
        }
        .serialize(s)
    }
}

impl<C: Coord> PointMap<C> {
    /// Build a map, checking that the table is total on the domain, has no
    /// extra keys, and only takes values in the codomain.
    pub fn new(
        domain: DigitalImage<C>,
        codomain: DigitalImage<C>,
        table: BTreeMap<Point<C>, Point<C>>,
    ) -> Result<Self> {
        if let Some(p) = domain.points().iter().find(|p| !table.contains_key(p)) {
            return Err(Error::NotTotal(p.to_string()));
        }
        if let Some(p) = table.keys().find(|p| !domain.contains(p)) {
            return Err(Error::DomainMismatch(format!("table has entry for {p} outside the domain")));
        }
        if let Some((p, v)) = table.iter().find(|(_, v)| !codomain.contains(v)) {
            return Err(Error::OutsideCodomain {
                point: p.to_string(),
                value: v.to_string(),
            });
        }
        Ok(PointMap {
            domain,
            codomain,
            table,
        })
    }

    /// Tabulate `f` over the domain.
    pub fn from_fn<F>(domain: DigitalImage<C>, codomain: DigitalImage<C>, f: F) -> Result<Self>
    where
        F: Fn(Point<C>) -> Point<C>,
    {
        let table = domain.points().iter().map(|&p| (p, f(p))).collect();
        PointMap::new(domain, codomain, table)
    }

    pub fn identity(image: &DigitalImage<C>) -> Self {
        let table = image.points().iter().map(|&p| (p, p)).collect();
        PointMap {
            domain: image.clone(),
            codomain: image.clone(),
            table,
        }
    }

    pub fn constant(domain: &DigitalImage<C>, codomain: &DigitalImage<C>, value: Point<C>) -> Result<Self> {
        PointMap::from_fn(domain.clone(), codomain.clone(), |_| value)
    }

    pub fn domain(&self) -> &DigitalImage<C> {
        &self.domain
    }

    pub fn codomain(&self) -> &DigitalImage<C> {
        &self.codomain
    }

    pub fn table(&self) -> &BTreeMap<Point<C>, Point<C>> {
        &self.table
    }

    pub fn get(&self, p: &Point<C>) -> Option<Point<C>> {
        self.table.get(p).copied()
    }

    /// `f(p)`; panics when `p` is outside the domain.
    pub fn apply(&self, p: Point<C>) -> Point<C> {
        self.table[&p]
    }

    /// `f(A)` for `A` a subset of the domain (points outside are skipped).
    pub fn image_of(&self, subset: &PointSet<C>) -> PointSet<C> {
        subset.iter().filter_map(|p| self.get(p)).collect()
    }

    /// `f(domain)`.
    pub fn image(&self) -> PointSet<C> {
        self.table.values().copied().collect()
    }

    pub fn is_self_map(&self) -> bool {
        self.domain == self.codomain
    }

    /// Same table, different codomain (must contain every value).
    pub fn with_codomain(self, codomain: DigitalImage<C>) -> Result<Self> {
        PointMap::new(self.domain, codomain, self.table)
    }

    /// Restriction to a subset of the domain. The subset inherits the
    /// domain's adjacency.
    pub fn restrict(&self, subset: &PointSet<C>) -> Result<Self> {
        if let Some(p) = subset.iter().find(|p| !self.domain.contains(p)) {
            return Err(Error::DomainMismatch(format!("{p} is not in the domain")));
        }
        let table = subset.iter().map(|&p| (p, self.table[&p])).collect();
        Ok(PointMap {
            domain: DigitalImage::new(subset.clone(), self.domain.adjacency()),
            codomain: self.codomain.clone(),
            table,
        })
    }

    pub fn entries(&self) -> Vec<MapEntry<C>> {
        self.table.iter().map(|(&from, &to)| MapEntry { from, to }).collect()
    }

    /// Digital continuity via the edge test: adjacent points of the domain
    /// go to equal or adjacent points of the codomain.
    pub fn is_continuous(&self) -> bool {
        self.first_discontinuity().is_none()
    }

    /// An adjacent pair whose images are neither equal nor adjacent.
    pub fn first_discontinuity(&self) -> Option<(Point<C>, Point<C>)> {
        let target = self.codomain.adjacency();
        for (&p, &fp) in &self.table {
            for q in self.domain.neighbors(p).filter(|q| *q > p) {
                if !adjacent_or_equal(fp, self.table[&q], target) {
                    return Some((p, q));
                }
            }
        }
        None
    }

    /// `self ∘ first`, i.e. `x ↦ self(first(x))`.
    pub fn after(&self, first: &PointMap<C>) -> Result<PointMap<C>> {
        compose(self, first)
    }
}

/// `g ∘ f`. Requires `f(domain) ⊆ g.domain`.
pub fn compose<C: Coord>(g: &PointMap<C>, f: &PointMap<C>) -> Result<PointMap<C>> {
    if let Some(v) = f.codomain.points().iter().find(|v| !g.domain.contains(v)) {
        return Err(Error::DomainMismatch(format!(
            "codomain point {v} of the inner map is outside the outer map's domain"
        )));
    }
    let table = f.table.iter().map(|(&p, v)| (p, g.table[v])).collect();
    Ok(PointMap {
        domain: f.domain.clone(),
        codomain: g.codomain.clone(),
        table,
    })
}

/// Whether `r` is a retraction of its domain onto `target`: continuous,
/// valued in `target`, and fixing `target` pointwise.
pub fn is_retraction<C: Coord>(r: &PointMap<C>, target: &DigitalImage<C>) -> bool {
    target.points().iter().all(|y| r.get(y) == Some(*y))
        && r.table.values().all(|v| target.contains(v))
        && r.is_continuous()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::{rectangle, AdjacencyKind::*};

    fn p(x: i64, y: i64) -> Point<i64> {
        Point::new(x, y)
    }

    fn line() -> DigitalImage<i64> {
        DigitalImage::new(rectangle(0, 3, 0, 0), C1)
    }

    #[test]
    fn identity_and_constant_are_continuous() {
        let x = line();
        assert!(PointMap::identity(&x).is_continuous());
        assert!(PointMap::constant(&x, &x, p(2, 0)).unwrap().is_continuous());
    }

    #[test]
    fn jump_is_discontinuous() {
        let x = line();
        let f = PointMap::from_fn(x.clone(), x, |q| if q == p(1, 0) { p(2, 0) } else { q }).unwrap();
        assert!(!f.is_continuous());
        assert_eq!(f.first_discontinuity(), Some((p(0, 0), p(1, 0))));
    }

    #[test]
    fn construction_checks_table() {
        let x = line();
        let mut table: BTreeMap<_, _> = x.points().iter().map(|&q| (q, q)).collect();
        table.remove(&p(3, 0));
        assert!(matches!(PointMap::new(x.clone(), x.clone(), table.clone()), Err(Error::NotTotal(_))));
        table.insert(p(3, 0), p(9, 9));
        assert!(matches!(PointMap::new(x.clone(), x, table), Err(Error::OutsideCodomain { .. })));
    }

    #[test]
    fn composition_laws() {
        let x = line();
        let f = PointMap::from_fn(x.clone(), x.clone(), |q| p(3 - q.x, 0)).unwrap();
        let id = PointMap::identity(&x);
        assert_eq!(compose(&id, &f).unwrap(), f);
        let c = PointMap::constant(&x, &x, p(1, 0)).unwrap();
        assert_eq!(compose(&c, &f).unwrap(), c);
        let other = DigitalImage::new(rectangle(10, 11, 0, 0), C1);
        let g = PointMap::identity(&other);
        assert!(matches!(compose(&g, &f), Err(Error::DomainMismatch(_))));
    }

    #[test]
    fn retraction_predicate() {
        let x = line();
        assert!(is_retraction(&PointMap::identity(&x), &x));
        let sq = DigitalImage::new(rectangle(0, 1, 0, 1), C1);
        let to_origin = PointMap::constant(&sq, &sq, p(0, 0)).unwrap();
        let target = DigitalImage::from_points([p(0, 0), p(1, 1)], C1);
        assert!(!is_retraction(&to_origin, &target));
    }

    #[test]
    fn restriction() {
        let x = line();
        let f = PointMap::identity(&x);
        let sub: PointSet<i64> = [p(1, 0), p(2, 0)].into_iter().collect();
        let r = f.restrict(&sub).unwrap();
        assert_eq!(r.domain().len(), 2);
        assert!(f.restrict(&[p(7, 7)].into_iter().collect()).is_err());
    }
}
