//! Closed and simple closed digital curves, Jordan partitions, disks and
//! bounding curves.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::lattice::{
    adjacent, complement_components, sets_adjacent, AdjacencyKind, BoundingBox, Point, PointSet,
};
use crate::scalar::Coord;

/// A closed curve `s₀ … s_{m-1}`: distinct points, cyclically consecutive
/// ones adjacent.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Serialize)]
#[serde(bound = "")]
pub struct Curve<C: Coord> {
    points: Vec<Point<C>>,
    kind: AdjacencyKind,
}

impl<C: Coord> Curve<C> {
    pub fn new(points: Vec<Point<C>>, kind: AdjacencyKind) -> Result<Self> {
        closed_curve_violation(&points, kind).map_or(Ok(()), |why| Err(Error::NotClosedCurve(why)))?;
        Ok(Curve { points, kind })
    }

    pub fn points(&self) -> &[Point<C>] {
        &self.points
    }

    pub fn kind(&self) -> AdjacencyKind {
        self.kind
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn point_set(&self) -> PointSet<C> {
        self.points.iter().copied().collect()
    }

    /// Position of `p` in the cyclic order.
    pub fn index_of(&self, p: &Point<C>) -> Option<usize> {
        self.points.iter().position(|q| q == p)
    }

    /// `s_{(i + k) mod m}`.
    pub fn at(&self, i: usize, k: i64) -> Point<C> {
        let m = self.points.len() as i64;
        self.points[(i as i64 + k).rem_euclid(m) as usize]
    }

    pub fn reversed(&self) -> Self {
        let mut points = self.points.clone();
        points.reverse();
        Curve { points, kind: self.kind }
    }

    pub fn rotated(&self, start: usize) -> Self {
        let mut points = self.points.clone();
        let n = points.len().max(1);
        points.rotate_left(start % n);
        Curve { points, kind: self.kind }
    }
}

fn closed_curve_violation<C: Coord>(seq: &[Point<C>], kind: AdjacencyKind) -> Option<String> {
    if seq.len() < 2 {
        return Some(format!("a closed curve needs at least 2 points, got {}", seq.len()));
    }
    let distinct: PointSet<C> = seq.iter().copied().collect();
    if distinct.len() != seq.len() {
        return Some("points repeat".into());
    }
    for (i, &a) in seq.iter().enumerate() {
        let b = seq[(i + 1) % seq.len()];
        if !adjacent(a, b, kind) {
            return Some(format!("step {i}: {a} and {b} are not {kind}-adjacent"));
        }
    }
    None
}

/// Distinct points with cyclically consecutive ones `kind`-adjacent.
pub fn is_closed_curve<C: Coord>(seq: &[Point<C>], kind: AdjacencyKind) -> bool {
    closed_curve_violation(seq, kind).is_none()
}

/// Smallest simple closed curve for which the Jordan theorem holds.
pub fn min_simple_length(kind: AdjacencyKind) -> usize {
    match kind {
        AdjacencyKind::C1 => 8,
        AdjacencyKind::C2 => 4,
    }
}

/// No chords (only consecutive points adjacent) and at least the minimum
/// length for the curve's adjacency.
pub fn is_simple_closed_curve<C: Coord>(curve: &Curve<C>) -> bool {
    let m = curve.len();
    if m < min_simple_length(curve.kind) {
        return false;
    }
    let pts = &curve.points;
    for i in 0..m {
        for j in i + 1..m {
            let consecutive = j == i + 1 || (i == 0 && j == m - 1);
            if !consecutive && adjacent(pts[i], pts[j], curve.kind) {
                return false;
            }
        }
    }
    true
}

/// Complement of a simple closed curve split into its two dual components.
#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
#[serde(bound = "")]
pub struct JordanPartition<C: Coord> {
    pub interior: PointSet<C>,
    /// Exterior restricted to `frame`.
    pub exterior: PointSet<C>,
    pub frame: BoundingBox<C>,
    pub dual_kind: AdjacencyKind,
}

pub fn jordan_components<C: Coord>(curve: &Curve<C>) -> Result<JordanPartition<C>> {
    if !is_simple_closed_curve(curve) {
        return Err(Error::Precondition(format!(
            "not a {}-simple closed curve with at least {} points",
            curve.kind,
            min_simple_length(curve.kind)
        )));
    }
    let dual = curve.kind.dual();
    let dec = complement_components(&curve.point_set(), dual)?;
    let finite: Vec<_> = dec.finite().collect();
    if dec.len() != 2 || finite.len() != 1 {
        return Err(Error::Inconsistent(format!(
            "complement has {} {dual}-components, expected one finite and one infinite",
            dec.len()
        )));
    }
    Ok(JordanPartition {
        interior: finite[0].points.clone(),
        exterior: dec.unbounded().expect("complement decomposition has an outer part").points.clone(),
        frame: dec.frame.expect("complement decomposition has a frame"),
        dual_kind: dual,
    })
}

/// `Int(S)` and the boxed `Ext(S)` of a c₂-closed curve whose complement
/// has exactly two c₁-components; `None` otherwise.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct DiskSplit<C: Coord> {
    pub interior: PointSet<C>,
    pub exterior: PointSet<C>,
    pub frame: BoundingBox<C>,
}

impl<C: Coord> DiskSplit<C> {
    /// Whether `p` lies in the (infinite) exterior.
    pub fn in_exterior(&self, p: &Point<C>) -> bool {
        !self.frame.contains(p) || self.exterior.contains(p)
    }
}

pub fn disk_split<C: Coord>(curve_points: &PointSet<C>) -> Option<DiskSplit<C>> {
    let dec = complement_components(curve_points, AdjacencyKind::C1).ok()?;
    let finite: Vec<_> = dec.finite().collect();
    if dec.len() != 2 || finite.len() != 1 {
        return None;
    }
    Some(DiskSplit {
        interior: finite[0].points.clone(),
        exterior: dec.unbounded()?.points.clone(),
        frame: dec.frame?,
    })
}

/// Clockwise Moore ring for a y-up plane, starting west.
const MOORE_RING: [(i8, i8); 8] = [(-1, 0), (-1, 1), (0, 1), (1, 1), (1, 0), (1, -1), (0, -1), (-1, -1)];

fn ring_step<C: Coord>(p: Point<C>, dir: usize) -> Point<C> {
    let (dx, dy) = MOORE_RING[dir % 8];
    p.offset(C::from(dx).unwrap(), C::from(dy).unwrap())
}

fn ring_index<C: Coord>(from: Point<C>, to: Point<C>) -> usize {
    let dx = (to.x - from.x).to_i8().expect("ring cells are adjacent");
    let dy = (to.y - from.y).to_i8().expect("ring cells are adjacent");
    MOORE_RING
        .iter()
        .position(|&d| d == (dx, dy))
        .expect("ring cells are adjacent")
}

/// Canonical bounding curve of `set`.
///
/// Moore-neighbor boundary trace from the lexicographically smallest point
/// (lowest point of the leftmost column), clockwise, stopping when the first
/// move is about to repeat. The result is then checked: it must be a
/// c₂-closed curve whose complement has one finite and one infinite
/// c₁-component, with `set ⊆ S ∪ Int(S)`.
pub fn trace_bounding_curve<C: Coord>(set: &PointSet<C>) -> Result<Curve<C>> {
    let &start = set.first().ok_or(Error::Empty)?;
    let step_limit = 4 * set.len() + 8;

    // Returns (next point, backtrack direction relative to next).
    let advance = |cur: Point<C>, back: usize| -> Option<(Point<C>, usize)> {
        (1..=8).find_map(|i| {
            let q = ring_step(cur, back + i);
            set.contains(&q).then(|| {
                let before = ring_step(cur, back + i - 1);
                (q, ring_index(q, before))
            })
        })
    };

    // West of the leftmost point is outside the set.
    let Some(first_move) = advance(start, 0) else {
        return Err(Error::NoBoundingCurve(format!("{start} is isolated")));
    };
    let mut seq = vec![start];
    let (mut cur, mut back) = first_move;
    loop {
        if seq.len() > step_limit {
            return Err(Error::NoBoundingCurve("boundary trace does not close".into()));
        }
        let next = advance(cur, back).expect("a traced point has a neighbor in the set");
        if cur == start && next.0 == first_move.0 {
            break;
        }
        seq.push(cur);
        (cur, back) = next;
    }

    let curve = Curve::new(seq, AdjacencyKind::C2)
        .map_err(|e| Error::NoBoundingCurve(format!("boundary trace is not a closed curve ({e})")))?;
    let split = disk_split(&curve.point_set()).ok_or_else(|| {
        Error::NoBoundingCurve("complement of the traced curve is not one finite plus one infinite component".into())
    })?;
    if let Some(p) = set
        .iter()
        .find(|p| !split.interior.contains(p) && curve.index_of(p).is_none())
    {
        return Err(Error::NoBoundingCurve(format!("{p} lies outside the traced curve")));
    }
    Ok(curve)
}

/// A bounding curve `S` with `D = S ∪ Int(S)`, or `None` when `D` is not a
/// disk (as witnessed by its canonical trace).
pub fn is_disk<C: Coord>(set: &PointSet<C>) -> Option<Curve<C>> {
    let curve = trace_bounding_curve(set).ok()?;
    let split = disk_split(&curve.point_set())?;
    let mut disk = split.interior;
    disk.extend(curve.points().iter().copied());
    (disk == *set).then_some(curve)
}

/// `S₁` (outer) followed by the hole curves `S₂ … S_n`.
#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
#[serde(bound = "")]
pub struct BoundingCurveSet<C: Coord> {
    pub curves: Vec<Curve<C>>,
}

/// Check every condition for `candidate` to be a set of bounding curves
/// of `set`.
pub fn is_bounding_curve_set<C: Coord>(set: &PointSet<C>, candidate: &BoundingCurveSet<C>) -> bool {
    bounding_set_violation(set, candidate).is_none()
}

/// The first failed condition, if any.
pub fn bounding_set_violation<C: Coord>(set: &PointSet<C>, candidate: &BoundingCurveSet<C>) -> Option<String> {
    let Some((outer, holes)) = candidate.curves.split_first() else {
        return Some("no curves".into());
    };
    let mut used = PointSet::new();
    for (j, s) in candidate.curves.iter().enumerate() {
        if !is_closed_curve(s.points(), AdjacencyKind::C2) {
            return Some(format!("curve {} is not c2-closed", j + 1));
        }
        for p in s.points() {
            if !set.contains(p) {
                return Some(format!("curve {} point {p} is not in the set", j + 1));
            }
            if !used.insert(*p) {
                return Some(format!("curves are not pairwise disjoint at {p}"));
            }
        }
    }

    let Some(outer_split) = disk_split(&outer.point_set()) else {
        return Some("outer curve does not bound a disk".into());
    };
    if let Some(p) = set
        .iter()
        .find(|p| outer.index_of(p).is_none() && !outer_split.interior.contains(p))
    {
        return Some(format!("{p} is not in S1 ∪ Int(S1)"));
    }

    let mut disks = Vec::with_capacity(holes.len());
    let mut hole_interiors = Vec::with_capacity(holes.len());
    for (j, s) in holes.iter().enumerate() {
        let Some(split) = disk_split(&s.point_set()) else {
            return Some(format!("curve {} does not bound a disk", j + 2));
        };
        let mut d = split.interior.clone();
        d.extend(s.points().iter().copied());
        disks.push(d);
        hole_interiors.push(split.interior);
    }

    // S1 ∪ Ext(S1), restricted to a box wide enough for every adjacency test.
    let mut outer_region = outer_split.exterior.clone();
    outer_region.extend(outer.points().iter().copied());
    let mut regions = vec![outer_region];
    regions.extend(disks);
    for a in 0..regions.len() {
        for b in a + 1..regions.len() {
            for kind in [AdjacencyKind::C1, AdjacencyKind::C2] {
                match sets_adjacent(&regions[a], &regions[b], kind) {
                    Ok(false) => {}
                    Ok(true) => return Some(format!("regions {} and {} are {kind}-adjacent", a + 1, b + 1)),
                    Err(_) => return Some(format!("regions {} and {} overlap", a + 1, b + 1)),
                }
            }
        }
    }

    // Z² \ X = Ext(S1) ∪ ⋃ Int(Sj).
    for (j, int) in hole_interiors.iter().enumerate() {
        if let Some(p) = int.iter().find(|p| set.contains(p)) {
            return Some(format!("interior of curve {} meets the set at {p}", j + 2));
        }
    }
    if let Some(p) = outer_split
        .interior
        .iter()
        .find(|p| !set.contains(p) && !hole_interiors.iter().any(|h| h.contains(p)))
    {
        return Some(format!("{p} is missing from the set but not inside any hole curve"));
    }
    None
}

/// The canonical set of bounding curves: the traced outer curve, then one
/// traced curve per finite c₁-component (hole) of the complement, holes
/// ordered by their smallest point. The result is verified before return.
pub fn canonical_bounding_curves<C: Coord>(set: &PointSet<C>) -> Result<BoundingCurveSet<C>> {
    let mut curves = vec![trace_bounding_curve(set)?];
    let complement = complement_components(set, AdjacencyKind::C1)?;
    for hole in complement.finite() {
        // The hole plus the points of the set 4-adjacent to it.
        let mut filled = hole.points.clone();
        for &p in &hole.points {
            filled.extend(AdjacencyKind::C1.neighbors(p).filter(|q| set.contains(q)));
        }
        let curve = trace_bounding_curve(&filled)?;
        let interior = disk_split(&curve.point_set()).map(|s| s.interior);
        if interior.as_ref() != Some(&hole.points) {
            return Err(Error::NoBoundingCurve(format!(
                "hole at {} is not the interior of its traced curve",
                hole.points.first().expect("components are nonempty")
            )));
        }
        curves.push(curve);
    }
    let candidate = BoundingCurveSet { curves };
    match bounding_set_violation(set, &candidate) {
        None => Ok(candidate),
        Some(why) => Err(Error::NoBoundingCurve(why)),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::rectangle;
    use AdjacencyKind::{C1, C2};

    fn p(x: i64, y: i64) -> Point<i64> {
        Point::new(x, y)
    }

    fn seq(pts: &[(i64, i64)]) -> Vec<Point<i64>> {
        pts.iter().map(|&(x, y)| p(x, y)).collect()
    }

    fn diamond8() -> Vec<Point<i64>> {
        seq(&[(2, 0), (1, 1), (0, 2), (-1, 1), (-2, 0), (-1, -1), (0, -2), (1, -1)])
    }

    fn filled_diamond(r: i64) -> PointSet<i64> {
        rectangle(-r, r, -r, r)
            .into_iter()
            .filter(|q| q.x.abs() + q.y.abs() <= r)
            .collect()
    }

    #[test]
    fn closed_curve_checks() {
        assert!(is_closed_curve(&diamond8(), C2));
        assert!(!is_closed_curve(&diamond8(), C1));
        assert!(!is_closed_curve(&seq(&[(0, 0), (2, 0), (1, 1)]), C2));
        assert!(!is_closed_curve(&seq(&[(0, 0), (1, 0), (0, 0), (1, 0)]), C2));
        assert!(!is_closed_curve(&seq(&[(0, 0)]), C2));
    }

    #[test]
    fn simple_closed_curve_checks() {
        assert!(is_simple_closed_curve(&Curve::new(diamond8(), C2).unwrap()));
        let unit = Curve::new(seq(&[(0, 0), (0, 1), (1, 1), (1, 0)]), C2).unwrap();
        assert!(!is_simple_closed_curve(&unit));
        let small = Curve::new(seq(&[(0, 0), (1, 1), (2, 0), (1, -1)]), C2).unwrap();
        assert!(is_simple_closed_curve(&small));
        // Too short for c1.
        let unit_c1 = Curve::new(seq(&[(0, 0), (0, 1), (1, 1), (1, 0)]), C1).unwrap();
        assert!(!is_simple_closed_curve(&unit_c1));
    }

    #[test]
    fn jordan_instances() {
        let d = jordan_components(&Curve::new(diamond8(), C2).unwrap()).unwrap();
        assert_eq!(d.interior, filled_diamond(1));
        assert_eq!(d.dual_kind, C1);

        let ring = Curve::new(seq(&[(0, 0), (0, 1), (0, 2), (1, 2), (2, 2), (2, 1), (2, 0), (1, 0)]), C1).unwrap();
        let j = jordan_components(&ring).unwrap();
        assert_eq!(j.interior, [p(1, 1)].into_iter().collect());
        assert_eq!(j.dual_kind, C2);

        let small = Curve::new(seq(&[(0, 0), (1, 1), (2, 0), (1, -1)]), C2).unwrap();
        assert_eq!(jordan_components(&small).unwrap().interior, [p(1, 0)].into_iter().collect());

        let unit = Curve::new(seq(&[(0, 0), (0, 1), (1, 1), (1, 0)]), C2).unwrap();
        assert!(matches!(jordan_components(&unit), Err(Error::Precondition(_))));
    }

    #[test]
    fn trace_square() {
        let c = trace_bounding_curve(&rectangle(0i64, 2, 0, 2)).unwrap();
        assert_eq!(
            c.points(),
            seq(&[(0, 0), (0, 1), (0, 2), (1, 2), (2, 2), (2, 1), (2, 0), (1, 0)]).as_slice()
        );
    }

    #[test]
    fn trace_diamond_disk() {
        let c = trace_bounding_curve(&filled_diamond(2)).unwrap();
        assert_eq!(c.points()[0], p(-2, 0));
        assert_eq!(c.point_set(), diamond8().into_iter().collect());
        assert_eq!(c.len(), 8);
    }

    #[test]
    fn trace_rejects_thin_sets() {
        assert!(matches!(
            trace_bounding_curve(&rectangle(0i64, 4, 0, 0)),
            Err(Error::NoBoundingCurve(_))
        ));
        assert!(trace_bounding_curve(&[p(0, 0)].into_iter().collect()).is_err());
        assert!(trace_bounding_curve(&[p(0, 0), p(1, 0)].into_iter().collect()).is_err());
        assert_eq!(trace_bounding_curve(&PointSet::<i64>::new()), Err(Error::Empty));
    }

    #[test]
    fn disk_detection() {
        let c = is_disk(&filled_diamond(2)).expect("D2 is a disk");
        assert_eq!(c.point_set(), diamond8().into_iter().collect());
        assert_eq!(is_disk(&rectangle(0i64, 2, 0, 2)).unwrap().len(), 8);
        assert!(is_disk(&diamond8().into_iter().collect()).is_none());
    }

    #[test]
    fn bounding_sets() {
        let sq = rectangle(0i64, 2, 0, 2);
        let canon = canonical_bounding_curves(&sq).unwrap();
        assert_eq!(canon.curves.len(), 1);
        assert!(is_bounding_curve_set(&sq, &canon));

        let mut missing = canon.curves[0].points().to_vec();
        missing.retain(|q| *q != p(2, 2));
        let bad = BoundingCurveSet {
            curves: vec![Curve::new(missing, C2).unwrap()],
        };
        assert!(!is_bounding_curve_set(&sq, &bad));
    }

    #[test]
    fn bounding_set_with_hole() {
        let x: PointSet<i64> = rectangle(-4, 4, -4, 4).difference(&filled_diamond(1)).copied().collect();
        let canon = canonical_bounding_curves(&x).unwrap();
        assert_eq!(canon.curves.len(), 2);
        assert_eq!(canon.curves[1].point_set(), diamond8().into_iter().collect());
        assert_eq!(canon.curves[0].len(), 32);

        let hand = BoundingCurveSet {
            curves: vec![
                trace_bounding_curve(&rectangle(-4, 4, -4, 4)).unwrap(),
                Curve::new(diamond8(), C2).unwrap(),
            ],
        };
        assert!(is_bounding_curve_set(&x, &hand));
    }

    #[test]
    fn one_point_wall_has_no_bounding_set() {
        // The hole disk touches the outer curve, so the non-adjacency bullet fails.
        let x: PointSet<i64> = rectangle(-3, 3, -3, 3).difference(&filled_diamond(1)).copied().collect();
        assert!(matches!(canonical_bounding_curves(&x), Err(Error::NoBoundingCurve(_))));
        let hand = BoundingCurveSet {
            curves: vec![
                trace_bounding_curve(&rectangle(-3, 3, -3, 3)).unwrap(),
                Curve::new(diamond8(), C2).unwrap(),
            ],
        };
        assert!(bounding_set_violation(&x, &hand).unwrap().contains("adjacent"));
    }

    #[test]
    fn orientation_and_rotation_do_not_matter() {
        let c = Curve::new(diamond8(), C2).unwrap();
        let base = jordan_components(&c).unwrap().interior;
        for variant in [c.reversed(), c.rotated(3), c.reversed().rotated(5)] {
            assert!(is_simple_closed_curve(&variant));
            assert_eq!(jordan_components(&variant).unwrap().interior, base);
        }
    }
}
