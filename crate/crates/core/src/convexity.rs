//! Digital line segments, exact lattice convex hulls, maximal segments of
//! bounding curves, and digital convexity.
//!
//! All geometry is exact: orientation tests widen coordinates to `i128`.

use serde::Serialize;

use crate::curves::{is_disk, Curve};
use crate::error::{Error, Result};
use crate::lattice::{components, AdjacencyKind, BoundingBox, Point, PointSet};
use crate::scalar::Coord;

/// Twice the signed area of `(a, b, c)`; positive for a left turn.
pub fn cross<C: Coord>(a: Point<C>, b: Point<C>, c: Point<C>) -> i128 {
    let (ax, ay) = (a.x.wide(), a.y.wide());
    (b.x.wide() - ax) * (c.y.wide() - ay) - (b.y.wide() - ay) * (c.x.wide() - ax)
}

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Orientation {
    Horizontal,
    Vertical,
    /// Slope +1.
    SlantedUp,
    /// Slope −1.
    SlantedDown,
}

impl Orientation {
    /// Orientation of a unit step `(dx, dy)`.
    fn of_step<C: Coord>(dx: C, dy: C) -> Option<Self> {
        if dx.abs() > C::one() || dy.abs() > C::one() {
            return None;
        }
        let z = C::zero();
        match (dx == z, dy == z) {
            (true, true) => None,
            (false, true) => Some(Orientation::Horizontal),
            (true, false) => Some(Orientation::Vertical),
            (false, false) if dx == dy => Some(Orientation::SlantedUp),
            (false, false) => Some(Orientation::SlantedDown),
        }
    }

    pub fn is_slanted(self) -> bool {
        matches!(self, Orientation::SlantedUp | Orientation::SlantedDown)
    }
}

/// A digital line segment. `points` run from `endpoints.0` to `endpoints.1`.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Serialize)]
#[serde(bound = "")]
pub struct Segment<C: Coord> {
    pub endpoints: (Point<C>, Point<C>),
    pub orientation: Orientation,
    pub points: Vec<Point<C>>,
}

impl<C: Coord> Segment<C> {
    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }
}

/// The segment formed by `set`, if it is `kind`-connected and collinear
/// with at least two points.
pub fn classify_segment<C: Coord>(set: &PointSet<C>, kind: AdjacencyKind) -> Option<Segment<C>> {
    if set.len() < 2 || components(set, kind).len() != 1 {
        return None;
    }
    // Lexicographic order is the order along any admissible line.
    let pts: Vec<Point<C>> = set.iter().copied().collect();
    let (a, b) = (pts[0], pts[1]);
    if pts.iter().any(|&c| cross(a, b, c) != 0) {
        return None;
    }
    let (dx, dy) = (b.x - a.x, b.y - a.y);
    let orientation = Orientation::of_step(dx, dy)?;
    if pts.windows(2).any(|w| w[1].x - w[0].x != dx || w[1].y - w[0].y != dy) {
        return None;
    }
    Some(Segment {
        endpoints: (a, *pts.last().expect("at least two points")),
        orientation,
        points: pts,
    })
}

/// Convex hull vertices in counterclockwise order, starting from the
/// lexicographically smallest vertex. No three consecutive vertices are
/// collinear.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Serialize)]
#[serde(bound = "")]
pub struct Hull<C: Coord> {
    pub vertices: Vec<Point<C>>,
}

impl<C: Coord> Hull<C> {
    pub fn vertex_set(&self) -> PointSet<C> {
        self.vertices.iter().copied().collect()
    }

    /// Exact membership in the closed hull.
    pub fn contains(&self, p: &Point<C>) -> bool {
        let v = &self.vertices;
        match v.len() {
            0 => false,
            1 => v[0] == *p,
            2 => {
                cross(v[0], v[1], *p) == 0
                    && BoundingBox::of(v.iter()).expect("two vertices").contains(p)
            }
            n => (0..n).all(|i| cross(v[i], v[(i + 1) % n], *p) >= 0),
        }
    }

    /// `Z² ∩ hull`.
    pub fn lattice_points(&self) -> PointSet<C> {
        match BoundingBox::of(self.vertices.iter()) {
            Some(bb) => bb.points().filter(|p| self.contains(p)).collect(),
            None => PointSet::new(),
        }
    }

    /// Edges as `(from, to)` pairs, counterclockwise.
    pub fn edges(&self) -> Vec<(Point<C>, Point<C>)> {
        let v = &self.vertices;
        match v.len() {
            0 | 1 => Vec::new(),
            2 => vec![(v[0], v[1])],
            n => (0..n).map(|i| (v[i], v[(i + 1) % n])).collect(),
        }
    }
}

/// Monotone-chain convex hull.
pub fn convex_hull<C: Coord>(set: &PointSet<C>) -> Result<Hull<C>> {
    if set.is_empty() {
        return Err(Error::Empty);
    }
    let pts: Vec<Point<C>> = set.iter().copied().collect();
    if pts.len() == 1 {
        return Ok(Hull { vertices: pts });
    }
    let mut lower: Vec<Point<C>> = Vec::new();
    for &p in &pts {
        while lower.len() >= 2 && cross(lower[lower.len() - 2], lower[lower.len() - 1], p) <= 0 {
            lower.pop();
        }
        lower.push(p);
    }
    let mut upper: Vec<Point<C>> = Vec::new();
    for &p in pts.iter().rev() {
        while upper.len() >= 2 && cross(upper[upper.len() - 2], upper[upper.len() - 1], p) <= 0 {
            upper.pop();
        }
        upper.push(p);
    }
    lower.pop();
    upper.pop();
    lower.extend(upper);
    Ok(Hull { vertices: lower })
}

/// Split a c₂-closed curve into maximal runs of equal steps.
pub fn maximal_segments<C: Coord>(curve: &Curve<C>) -> Vec<Segment<C>> {
    let pts = curve.points();
    let m = pts.len();
    let step = |i: usize| {
        let (a, b) = (pts[i % m], pts[(i + 1) % m]);
        (b.x - a.x, b.y - a.y)
    };
    // A closed curve always turns somewhere: its steps sum to zero.
    let Some(start) = (0..m).find(|&i| step(i + m - 1) != step(i)) else {
        return Vec::new();
    };
    let mut out = Vec::new();
    let mut i = 0;
    while i < m {
        let dir = step(start + i);
        let mut run = vec![pts[(start + i) % m]];
        while i < m && step(start + i) == dir {
            i += 1;
            run.push(pts[(start + i) % m]);
        }
        out.push(Segment {
            endpoints: (run[0], *run.last().expect("runs have two points")),
            orientation: Orientation::of_step(dir.0, dir.1).expect("curve steps are unit steps"),
            points: run,
        });
    }
    out
}

/// Endpoints of a list of segments.
pub fn segment_endpoints<C: Coord>(segments: &[Segment<C>]) -> PointSet<C> {
    segments.iter().flat_map(|s| [s.endpoints.0, s.endpoints.1]).collect()
}

/// Outcome of the convexity decision, with its evidence.
#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
#[serde(bound = "", tag = "case", rename_all = "snake_case")]
pub enum Convexity<C: Coord> {
    Point {
        point: Point<C>,
    },
    Segment {
        segment: Segment<C>,
    },
    Disk {
        curve: Curve<C>,
        segments: Vec<Segment<C>>,
        hull: Hull<C>,
    },
    NotConvex {
        violation: Violation<C>,
    },
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
#[serde(bound = "", tag = "condition", rename_all = "snake_case")]
pub enum Violation<C: Coord> {
    /// Neither a point, a segment, nor a disk.
    NotPointSegmentOrDisk { reason: String },
    /// A disk whose bounding-curve segment endpoints differ from the hull
    /// vertices.
    EndpointsNotHullVertices {
        curve: Curve<C>,
        endpoints: PointSet<C>,
        hull_vertices: PointSet<C>,
    },
}

impl<C: Coord> Convexity<C> {
    pub fn is_convex(&self) -> bool {
        !matches!(self, Convexity::NotConvex { .. })
    }

    pub fn case_name(&self) -> &'static str {
        match self {
            Convexity::Point { .. } => "point",
            Convexity::Segment { .. } => "segment",
            Convexity::Disk { .. } => "disk",
            Convexity::NotConvex { .. } => "not_convex",
        }
    }
}

/// Decide digital convexity: a single point, a digital segment, or a disk
/// whose canonical bounding curve has maximal-segment endpoints exactly at
/// the hull vertices.
pub fn is_digitally_convex<C: Coord>(set: &PointSet<C>) -> Result<Convexity<C>> {
    let hull = convex_hull(set)?;
    if set.len() == 1 {
        return Ok(Convexity::Point {
            point: *set.first().expect("nonempty"),
        });
    }
    if let Some(segment) =
        classify_segment(set, AdjacencyKind::C1).or_else(|| classify_segment(set, AdjacencyKind::C2))
    {
        return Ok(Convexity::Segment { segment });
    }
    let Some(curve) = is_disk(set) else {
        let reason = if components(set, AdjacencyKind::C2).len() > 1 {
            "set is not connected"
        } else {
            "set is not a segment and has no bounding curve S with S ∪ Int(S) equal to it"
        };
        return Ok(Convexity::NotConvex {
            violation: Violation::NotPointSegmentOrDisk { reason: reason.into() },
        });
    };
    let segments = maximal_segments(&curve);
    let endpoints = segment_endpoints(&segments);
    let hull_vertices = hull.vertex_set();
    if endpoints != hull_vertices {
        return Ok(Convexity::NotConvex {
            violation: Violation::EndpointsNotHullVertices {
                curve,
                endpoints,
                hull_vertices,
            },
        });
    }
    Ok(Convexity::Disk { curve, segments, hull })
}

/// `set == Z² ∩ hull(set)`.
pub fn is_hull_saturated<C: Coord>(set: &PointSet<C>) -> Result<bool> {
    Ok(convex_hull(set)?.lattice_points() == *set)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::rectangle;
    use AdjacencyKind::{C1, C2};

    fn p(x: i64, y: i64) -> Point<i64> {
        Point::new(x, y)
    }

    fn set(pts: &[(i64, i64)]) -> PointSet<i64> {
        pts.iter().map(|&(x, y)| p(x, y)).collect()
    }

    fn d2() -> PointSet<i64> {
        rectangle(-2i64, 2, -2, 2)
            .into_iter()
            .filter(|q| q.x.abs() + q.y.abs() <= 2)
            .collect()
    }

    /// A point is a hull vertex iff it is outside the hull of the others.
    fn brute_vertices(s: &PointSet<i64>) -> PointSet<i64> {
        s.iter()
            .copied()
            .filter(|&v| {
                let rest: PointSet<i64> = s.iter().copied().filter(|&q| q != v).collect();
                rest.is_empty() || !convex_hull(&rest).unwrap().contains(&v)
            })
            .collect()
    }

    #[test]
    fn segments() {
        let s = classify_segment(&set(&[(0, 0), (1, 1), (2, 2)]), C2).unwrap();
        assert_eq!(s.orientation, Orientation::SlantedUp);
        assert_eq!(s.endpoints, (p(0, 0), p(2, 2)));
        assert!(classify_segment(&set(&[(0, 0), (1, 1)]), C1).is_none());
        assert!(classify_segment(&set(&[(0, 0), (1, 2)]), C2).is_none());
        assert!(classify_segment(&set(&[(0, 0), (1, 0), (1, 1)]), C2).is_none());
        let down = classify_segment(&set(&[(0, 3), (1, 2), (2, 1)]), C2).unwrap();
        assert_eq!(down.orientation, Orientation::SlantedDown);
        let v = classify_segment(&rectangle(4, 4, -1, 2), C1).unwrap();
        assert_eq!(v.orientation, Orientation::Vertical);
        assert_eq!(v.endpoints, (p(4, -1), p(4, 2)));
    }

    #[test]
    fn hulls() {
        let h = convex_hull(&d2()).unwrap();
        assert_eq!(h.vertex_set(), set(&[(2, 0), (0, 2), (-2, 0), (0, -2)]));
        assert_eq!(h.vertex_set(), brute_vertices(&d2()));
        assert_eq!(convex_hull(&set(&[(0, 0), (3, 0), (1, 0)])).unwrap().vertices, vec![p(0, 0), p(3, 0)]);
        assert_eq!(convex_hull(&set(&[(7, 7)])).unwrap().vertices, vec![p(7, 7)]);
        assert_eq!(convex_hull(&PointSet::<i64>::new()), Err(Error::Empty));
        // Counterclockwise.
        let v = &h.vertices;
        assert!(cross(v[0], v[1], v[2]) > 0);
    }

    #[test]
    fn hull_matches_brute_force_on_clipped_square() {
        let mut s = rectangle(0, 2, 0, 2);
        s.insert(p(3, 1));
        assert_eq!(convex_hull(&s).unwrap().vertex_set(), brute_vertices(&s));
    }

    #[test]
    fn maximal_segment_decomposition() {
        let c = is_disk(&d2()).unwrap();
        let segs = maximal_segments(&c);
        assert_eq!(segs.len(), 4);
        assert!(segs.iter().all(|s| s.orientation.is_slanted()));
        assert_eq!(segment_endpoints(&segs), set(&[(2, 0), (0, 2), (-2, 0), (0, -2)]));

        let sq = is_disk(&rectangle(0, 2, 0, 2)).unwrap();
        let segs = maximal_segments(&sq);
        assert_eq!(segs.len(), 4);
        assert_eq!(segment_endpoints(&segs), set(&[(0, 0), (0, 2), (2, 2), (2, 0)]));

        let small = Curve::new(vec![p(0, 0), p(1, 1), p(2, 0), p(1, -1)], C2).unwrap();
        let segs = maximal_segments(&small);
        assert_eq!(segs.len(), 4);
        assert!(segs.iter().all(|s| s.len() == 2));
    }

    #[test]
    fn convexity_decisions() {
        assert_eq!(is_digitally_convex(&d2()).unwrap().case_name(), "disk");
        let mut clipped = rectangle(0, 2, 0, 2);
        clipped.insert(p(3, 1));
        assert_eq!(is_digitally_convex(&clipped).unwrap().case_name(), "disk");

        let ring: PointSet<i64> = d2().into_iter().filter(|q| q.x.abs() + q.y.abs() == 2).collect();
        let verdict = is_digitally_convex(&ring).unwrap();
        assert!(matches!(
            verdict,
            Convexity::NotConvex {
                violation: Violation::NotPointSegmentOrDisk { .. }
            }
        ));

        assert_eq!(is_digitally_convex(&set(&[(1, 1)])).unwrap().case_name(), "point");
        assert_eq!(is_digitally_convex(&rectangle(0, 3, 0, 0)).unwrap().case_name(), "segment");
        assert_eq!(is_digitally_convex(&PointSet::<i64>::new()), Err(Error::Empty));
    }

    #[test]
    fn thick_l_fails_on_endpoints() {
        let mut l = rectangle(0, 3, 0, 1);
        l.extend(rectangle(0, 1, 0, 3));
        match is_digitally_convex(&l).unwrap() {
            Convexity::NotConvex {
                violation: Violation::EndpointsNotHullVertices { endpoints, hull_vertices, .. },
            } => {
                // The trace cuts the inner corner diagonally.
                assert!(endpoints.contains(&p(1, 2)) && endpoints.contains(&p(2, 1)));
                assert!(!hull_vertices.contains(&p(1, 2)));
            }
            other => panic!("unexpected verdict {other:?}"),
        }
    }

    #[test]
    fn saturation() {
        assert!(is_hull_saturated(&d2()).unwrap());
        assert!(!is_hull_saturated(&set(&[(0, 0), (2, 0)])).unwrap());
    }
}
