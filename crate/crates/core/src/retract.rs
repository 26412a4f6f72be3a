//! c₂-retractions onto digitally convex sets.
//!
//! [`DiskRetraction`] materializes the column-wise construction for a
//! convex disk `X`: points of `X` are fixed; points above or below `X`
//! inside its column range drop vertically onto the curve; points left of
//! the leftmost column (right of the rightmost) go to the nearest point of
//! that column of the bounding curve. The formulas are defined on all of
//! Z², so any finite superset `Y ⊇ X` can be retracted.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::convexity::{is_digitally_convex, Convexity, Orientation, Segment};
use crate::curves::{disk_split, Curve};
use crate::error::{Error, Result};
use crate::lattice::{complement_components, AdjacencyKind, DigitalImage, Point, PointSet};
use crate::maps::{is_retraction, PointMap};
use crate::scalar::{clamp, floor_midpoint, Coord};

/// Bookkeeping of the disk retraction.
#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
#[serde(bound = "")]
pub struct RetractionCertificate<C: Coord> {
    /// Smallest first coordinate over `X`.
    #[serde(rename = "m")]
    pub min_x: C,
    /// Largest first coordinate over `X`.
    #[serde(rename = "M")]
    pub max_x: C,
    /// Curve points in column `min_x`.
    #[serde(rename = "L")]
    pub left: PointSet<C>,
    /// Curve points in column `max_x`.
    #[serde(rename = "R")]
    pub right: PointSet<C>,
    #[serde(rename = "s0")]
    pub left_low: C,
    #[serde(rename = "s1")]
    pub left_high: C,
    #[serde(rename = "s2")]
    pub right_low: C,
    #[serde(rename = "s3")]
    pub right_high: C,
    pub curve: Curve<C>,
}

/// The retraction formula for one convex disk, evaluable anywhere in Z².
#[derive(Clone, Debug)]
pub struct DiskRetraction<C: Coord> {
    disk: PointSet<C>,
    /// Lowest and highest point of `X` in each column.
    columns: BTreeMap<C, (C, C)>,
    certificate: RetractionCertificate<C>,
}

impl<C: Coord> DiskRetraction<C> {
    /// Fails unless `disk` is a digitally convex disk.
    pub fn new(disk: &PointSet<C>) -> Result<Self> {
        let curve = match is_digitally_convex(disk)? {
            Convexity::Disk { curve, .. } => curve,
            other => {
                return Err(Error::Precondition(format!(
                    "retraction target is not a convex disk (convexity case: {})",
                    other.case_name()
                )))
            }
        };
        let mut columns: BTreeMap<C, (C, C)> = BTreeMap::new();
        for p in disk {
            columns
                .entry(p.x)
                .and_modify(|(lo, hi)| {
                    *lo = (*lo).min(p.y);
                    *hi = (*hi).max(p.y);
                })
                .or_insert((p.y, p.y));
        }
        let min_x = *columns.keys().next().expect("disks are nonempty");
        let max_x = *columns.keys().next_back().expect("disks are nonempty");
        let column_of = |x: C| -> PointSet<C> { curve.points().iter().filter(|p| p.x == x).copied().collect() };
        let (left, right) = (column_of(min_x), column_of(max_x));
        let span = |s: &PointSet<C>| {
            let lo = s.iter().map(|p| p.y).min().expect("extreme columns meet the curve");
            let hi = s.iter().map(|p| p.y).max().expect("extreme columns meet the curve");
            (lo, hi)
        };
        let (left_low, left_high) = span(&left);
        let (right_low, right_high) = span(&right);
        Ok(DiskRetraction {
            disk: disk.clone(),
            columns,
            certificate: RetractionCertificate {
                min_x,
                max_x,
                left,
                right,
                left_low,
                left_high,
                right_low,
                right_high,
                curve,
            },
        })
    }

    pub fn certificate(&self) -> &RetractionCertificate<C> {
        &self.certificate
    }

    pub fn curve(&self) -> &Curve<C> {
        &self.certificate.curve
    }

    /// `r(p)` for any lattice point.
    pub fn image_of(&self, p: Point<C>) -> Result<Point<C>> {
        if self.disk.contains(&p) {
            return Ok(p);
        }
        let cert = &self.certificate;
        if p.x < cert.min_x {
            return Ok(Point::new(cert.min_x, clamp(p.y, cert.left_low, cert.left_high)));
        }
        if p.x > cert.max_x {
            return Ok(Point::new(cert.max_x, clamp(p.y, cert.right_low, cert.right_high)));
        }
        let &(low, high) = self
            .columns
            .get(&p.x)
            .ok_or_else(|| Error::Inconsistent(format!("column {} of the disk is empty", p.x)))?;
        if p.y > high {
            Ok(Point::new(p.x, high))
        } else if p.y < low {
            Ok(Point::new(p.x, low))
        } else {
            Err(Error::Inconsistent(format!("{p} lies in a gap of its disk column")))
        }
    }

    /// Tabulate the retraction over `superset ⊇ X` and verify it.
    pub fn materialize(&self, superset: &PointSet<C>) -> Result<PointMap<C>> {
        if let Some(p) = self.disk.iter().find(|p| !superset.contains(p)) {
            return Err(Error::Precondition(format!("{p} of the disk is not in the superset")));
        }
        let table = superset
            .iter()
            .map(|&p| Ok((p, self.image_of(p)?)))
            .collect::<Result<BTreeMap<_, _>>>()?;
        let target = DigitalImage::new(self.disk.clone(), AdjacencyKind::C2);
        let map = PointMap::new(DigitalImage::new(superset.clone(), AdjacencyKind::C2), target.clone(), table)?;
        verified(map, &target)
    }
}

fn verified<C: Coord>(map: PointMap<C>, target: &DigitalImage<C>) -> Result<PointMap<C>> {
    if is_retraction(&map, target) {
        Ok(map)
    } else {
        let why = match map.first_discontinuity() {
            Some((a, b)) => format!("discontinuous at {a} ~ {b}"),
            None => "does not fix the target".into(),
        };
        Err(Error::Inconsistent(format!("constructed map is not a retraction: {why}")))
    }
}

/// The c₂-retraction of `y ⊇ x` onto the convex disk `x`, with its
/// bookkeeping.
pub fn convex_disk_retraction<C: Coord>(
    x: &PointSet<C>,
    y: &PointSet<C>,
) -> Result<(PointMap<C>, RetractionCertificate<C>)> {
    let disk = DiskRetraction::new(x)?;
    let map = disk.materialize(y)?;
    Ok((map, disk.certificate))
}

/// A retraction of `x` onto the bounding curve `S` of the convex disk
/// `xp`, where `Int(S)` is a hole of `x`: the disk retraction of `x ∪ xp`
/// onto `xp`, restricted to `x`.
pub fn hole_retraction<C: Coord>(x: &PointSet<C>, xp: &PointSet<C>) -> Result<PointMap<C>> {
    Ok(hole_retraction_with_curve(x, xp)?.0)
}

pub(crate) fn hole_retraction_with_curve<C: Coord>(
    x: &PointSet<C>,
    xp: &PointSet<C>,
) -> Result<(PointMap<C>, Curve<C>)> {
    let disk = DiskRetraction::new(xp)?;
    let curve = disk.curve().clone();
    let curve_points = curve.point_set();
    if let Some(p) = curve_points.iter().find(|p| !x.contains(p)) {
        return Err(Error::Precondition(format!("bounding curve point {p} is not in X")));
    }
    let interior = disk_split(&curve_points)
        .ok_or_else(|| Error::Inconsistent("convex disk curve has no interior split".into()))?
        .interior;
    let holes = complement_components(x, AdjacencyKind::C2)?;
    if !holes.finite().any(|h| h.points == interior) {
        return Err(Error::Precondition(
            "interior of the disk's bounding curve is not a c2-component of the complement of X".into(),
        ));
    }
    let union: PointSet<C> = x.union(xp).copied().collect();
    let full = disk.materialize(&union)?;
    let restricted = full
        .restrict(x)?
        .with_codomain(DigitalImage::new(curve_points.clone(), AdjacencyKind::C2))?;
    let target = DigitalImage::new(curve_points, AdjacencyKind::C2);
    Ok((verified(restricted, &target)?, curve))
}

/// Retraction of `y` onto a singleton or digital segment `x`.
///
/// Horizontal and vertical segments clamp the varying coordinate. Slanted
/// segments send a point to the Chebyshev-nearest segment point, taking the
/// one with smaller first coordinate on ties.
pub fn thin_convex_retraction<C: Coord>(x: &PointSet<C>, y: &PointSet<C>) -> Result<PointMap<C>> {
    if let Some(p) = x.iter().find(|p| !y.contains(p)) {
        return Err(Error::Precondition(format!("{p} of the target is not in the superset")));
    }
    let rule: Box<dyn Fn(Point<C>) -> Point<C>> = match is_digitally_convex(x)? {
        Convexity::Point { point } => Box::new(move |_| point),
        Convexity::Segment { segment } => Box::new(segment_projection(segment)),
        other => {
            return Err(Error::Precondition(format!(
                "target is not a point or segment (convexity case: {})",
                other.case_name()
            )))
        }
    };
    let target = DigitalImage::new(x.clone(), AdjacencyKind::C2);
    let map = PointMap::from_fn(DigitalImage::new(y.clone(), AdjacencyKind::C2), target.clone(), rule)?;
    verified(map, &target)
}

fn segment_projection<C: Coord>(segment: Segment<C>) -> impl Fn(Point<C>) -> Point<C> {
    // Endpoints are lexicographically ordered, so `a` is the left (or lower) end.
    let (a, b) = segment.endpoints;
    move |p: Point<C>| match segment.orientation {
        Orientation::Horizontal => Point::new(clamp(p.x, a.x, b.x), a.y),
        Orientation::Vertical => Point::new(a.x, clamp(p.y, a.y, b.y)),
        Orientation::SlantedUp => {
            // Parametrize a + t(1, 1); minimize max(|u - t|, |v - t|).
            let t = floor_midpoint(p.x - a.x, p.y - a.y);
            let t = clamp(t, C::zero(), b.x - a.x);
            a.offset(t, t)
        }
        Orientation::SlantedDown => {
            // a + t(1, -1).
            let t = floor_midpoint(p.x - a.x, a.y - p.y);
            let t = clamp(t, C::zero(), b.x - a.x);
            a.offset(t, -t)
        }
    }
}

/// Retraction of `y` onto any digitally convex `x`.
pub fn convex_retraction<C: Coord>(x: &PointSet<C>, y: &PointSet<C>) -> Result<PointMap<C>> {
    match is_digitally_convex(x)? {
        Convexity::Disk { .. } => Ok(convex_disk_retraction(x, y)?.0),
        Convexity::Point { .. } | Convexity::Segment { .. } => thin_convex_retraction(x, y),
        Convexity::NotConvex { .. } => Err(Error::Precondition("target is not digitally convex".into())),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::rectangle;

    fn p(x: i64, y: i64) -> Point<i64> {
        Point::new(x, y)
    }

    fn diamond(r: i64) -> PointSet<i64> {
        rectangle(-r, r, -r, r)
            .into_iter()
            .filter(|q| q.x.abs() + q.y.abs() <= r)
            .collect()
    }

    #[test]
    fn d2_in_square() {
        let (r, cert) = convex_disk_retraction(&diamond(2), &rectangle(-3, 3, -3, 3)).unwrap();
        assert_eq!((cert.min_x, cert.max_x), (-2, 2));
        assert_eq!(cert.left, [p(-2, 0)].into_iter().collect());
        assert_eq!(cert.right, [p(2, 0)].into_iter().collect());
        assert_eq!((cert.left_low, cert.left_high, cert.right_low, cert.right_high), (0, 0, 0, 0));
        assert_eq!(r.apply(p(0, 3)), p(0, 2));
        assert_eq!(r.apply(p(-3, 3)), p(-2, 0));
        assert_eq!(r.apply(p(3, -1)), p(2, 0));
        for q in diamond(2) {
            assert_eq!(r.apply(q), q);
        }
    }

    #[test]
    fn square_with_tall_left_column() {
        let disk = DiskRetraction::new(&rectangle(0, 2, 0, 2)).unwrap();
        assert_eq!(disk.certificate().left_high, 2);
        assert_eq!(disk.image_of(p(-1, 5)).unwrap(), p(0, 2));
        let r = disk.materialize(&rectangle(-1, 3, -1, 3)).unwrap();
        assert_eq!(r.apply(p(-1, 3)), p(0, 2));
        assert_eq!(r.apply(p(3, -1)), p(2, 0));
        assert_eq!(r.apply(p(1, 3)), p(1, 2));
    }

    #[test]
    fn non_convex_target_is_rejected() {
        let ring: PointSet<i64> = diamond(2).difference(&diamond(1)).copied().collect();
        assert!(matches!(
            convex_disk_retraction(&ring, &rectangle(-3, 3, -3, 3)),
            Err(Error::Precondition(_))
        ));
        assert!(matches!(
            convex_disk_retraction(&diamond(2), &diamond(1)),
            Err(Error::Precondition(_))
        ));
    }

    #[test]
    fn hole_retraction_on_example_image() {
        let x: PointSet<i64> = rectangle(-3, 3, -3, 3).difference(&diamond(1)).copied().collect();
        let r = hole_retraction(&x, &diamond(2)).unwrap();
        assert_eq!(r.domain().len(), 44);
        assert_eq!(r.image().len(), 8);
        assert_eq!(r.apply(p(3, 3)), p(2, 0));
        assert_eq!(r.apply(p(0, 3)), p(0, 2));
        for q in diamond(2).difference(&diamond(1)) {
            assert_eq!(r.apply(*q), *q);
        }
    }

    #[test]
    fn hole_retraction_requires_a_hole() {
        let solid = rectangle(-3i64, 3, -3, 3);
        assert!(matches!(hole_retraction(&solid, &diamond(2)), Err(Error::Precondition(_))));
    }

    #[test]
    fn thin_targets() {
        let seg = rectangle(0, 3, 0, 0);
        let r = thin_convex_retraction(&seg, &rectangle(0, 3, -1, 1)).unwrap();
        assert_eq!(r.apply(p(2, 1)), p(2, 0));

        let single: PointSet<i64> = [p(5, 5)].into_iter().collect();
        let y = rectangle(3, 6, 3, 6);
        let c = thin_convex_retraction(&single, &y).unwrap();
        assert!(y.iter().all(|q| c.apply(*q) == p(5, 5)));

        let diag: PointSet<i64> = [p(0, 0), p(1, 1), p(2, 2)].into_iter().collect();
        let d = thin_convex_retraction(&diag, &rectangle(0, 2, 0, 2)).unwrap();
        assert_eq!(d.apply(p(2, 0)), p(1, 1));
        assert_eq!(d.apply(p(0, 2)), p(1, 1));
        assert_eq!(d.apply(p(1, 0)), p(0, 0));

        let anti: PointSet<i64> = [p(0, 2), p(1, 1), p(2, 0)].into_iter().collect();
        let a = thin_convex_retraction(&anti, &rectangle(-1, 3, -1, 3)).unwrap();
        assert_eq!(a.apply(p(0, 0)), p(1, 1));
        assert_eq!(a.apply(p(0, 1)), p(0, 2));
        assert_eq!(a.apply(p(2, 2)), p(1, 1));

        assert!(matches!(
            thin_convex_retraction(&diamond(2), &rectangle(-3, 3, -3, 3)),
            Err(Error::Precondition(_))
        ));
    }
}
