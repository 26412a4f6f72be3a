//! Points of Z², the c₁ (4-) and c₂ (8-) adjacencies, closed neighborhoods,
//! connectivity and component decomposition of finite sets and of their
//! (infinite) complements.

use std::collections::{BTreeSet, VecDeque};
use std::fmt;

use serde::de::Deserializer;
use serde::ser::Serializer;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scalar::Coord;

/// A lattice point. Ordering is lexicographic: first `x`, then `y`.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Point<C> {
    pub x: C,
    pub y: C,
}

impl<C: Coord> Point<C> {
    pub const fn new(x: C, y: C) -> Self {
        Point { x, y }
    }

    pub fn offset(self, dx: C, dy: C) -> Self {
        Point::new(self.x + dx, self.y + dy)
    }

    /// Chebyshev (chessboard) distance.
    pub fn chebyshev(self, other: Self) -> C {
        (self.x - other.x).abs().max((self.y - other.y).abs())
    }
}

impl<C: Coord> fmt::Display for Point<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.x, self.y)
    }
}

impl<C: Coord> Serialize for Point<C> {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        (self.x, self.y).serialize(s)
    }
}

impl<'de, C: Coord> Deserialize<'de> for Point<C> {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let (x, y) = <(C, C)>::deserialize(d)?;
        Ok(Point::new(x, y))
    }
}

/// Finite point sets are kept sorted so every traversal is deterministic.
pub type PointSet<C> = BTreeSet<Point<C>>;

/// The c_u adjacencies of Z².
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Serialize, Deserialize)]
pub enum AdjacencyKind {
    /// 4-adjacency: exactly one coordinate differs, by 1.
    #[serde(rename = "c1")]
    C1,
    /// 8-adjacency: each coordinate differs by at most 1.
    #[serde(rename = "c2")]
    C2,
}

const C1_OFFSETS: [(i8, i8); 4] = [(-1, 0), (0, -1), (0, 1), (1, 0)];
const C2_OFFSETS: [(i8, i8); 8] = [
    (-1, -1),
    (-1, 0),
    (-1, 1),
    (0, -1),
    (0, 1),
    (1, -1),
    (1, 0),
    (1, 1),
];

impl AdjacencyKind {
    /// The complementary adjacency used for complements in the Jordan
    /// curve theorem: {κ, κ′} = {c₁, c₂}.
    pub fn dual(self) -> Self {
        match self {
            AdjacencyKind::C1 => AdjacencyKind::C2,
            AdjacencyKind::C2 => AdjacencyKind::C1,
        }
    }

    fn raw_offsets(self) -> &'static [(i8, i8)] {
        match self {
            AdjacencyKind::C1 => &C1_OFFSETS,
            AdjacencyKind::C2 => &C2_OFFSETS,
        }
    }

    /// The points adjacent to `p`, in lexicographic order.
    pub fn neighbors<C: Coord>(self, p: Point<C>) -> impl Iterator<Item = Point<C>> {
        self.raw_offsets()
            .iter()
            .map(move |&(dx, dy)| p.offset(small::<C>(dx), small::<C>(dy)))
    }

    pub fn name(self) -> &'static str {
        match self {
            AdjacencyKind::C1 => "c1",
            AdjacencyKind::C2 => "c2",
        }
    }
}

impl fmt::Display for AdjacencyKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl std::str::FromStr for AdjacencyKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "c1" | "4" => Ok(AdjacencyKind::C1),
            "c2" | "8" => Ok(AdjacencyKind::C2),
            other => Err(Error::Parse {
                line: 0,
                message: format!("unknown adjacency '{other}' (expected c1 or c2)"),
            }),
        }
    }
}

fn small<C: Coord>(v: i8) -> C {
    match v {
        -1 => -C::one(),
        0 => C::zero(),
        1 => C::one(),
        _ => unreachable!("offsets are in {{-1, 0, 1}}"),
    }
}

/// `p ↔ q` under `kind`. Irreflexive.
pub fn adjacent<C: Coord>(p: Point<C>, q: Point<C>, kind: AdjacencyKind) -> bool {
    let dx = (p.x - q.x).abs();
    let dy = (p.y - q.y).abs();
    if dx > C::one() || dy > C::one() || p == q {
        return false;
    }
    match kind {
        AdjacencyKind::C1 => dx + dy == C::one(),
        AdjacencyKind::C2 => true,
    }
}

/// `p ⇌ q`: equal or adjacent.
pub fn adjacent_or_equal<C: Coord>(p: Point<C>, q: Point<C>, kind: AdjacencyKind) -> bool {
    p == q || adjacent(p, q, kind)
}

/// A finite subset of Z² together with an adjacency.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
#[serde(bound = "")]
pub struct DigitalImage<C: Coord> {
    points: PointSet<C>,
    adjacency: AdjacencyKind,
}

impl<C: Coord> DigitalImage<C> {
    pub fn new(points: PointSet<C>, adjacency: AdjacencyKind) -> Self {
        DigitalImage { points, adjacency }
    }

    pub fn from_points<I: IntoIterator<Item = Point<C>>>(points: I, adjacency: AdjacencyKind) -> Self {
        DigitalImage::new(points.into_iter().collect(), adjacency)
    }

    pub fn points(&self) -> &PointSet<C> {
        &self.points
    }

    pub fn adjacency(&self) -> AdjacencyKind {
        self.adjacency
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn contains(&self, p: &Point<C>) -> bool {
        self.points.contains(p)
    }

    /// Neighbors of `p` lying in the image (excluding `p`).
    pub fn neighbors(&self, p: Point<C>) -> impl Iterator<Item = Point<C>> + '_ {
        self.adjacency.neighbors(p).filter(move |q| self.points.contains(q))
    }

    pub fn with_adjacency(&self, adjacency: AdjacencyKind) -> Self {
        DigitalImage::new(self.points.clone(), adjacency)
    }

    pub fn bounds(&self) -> Option<BoundingBox<C>> {
        BoundingBox::of(&self.points)
    }
}

/// Axis-aligned closed box `[min.x, max.x] × [min.y, max.y]`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
#[serde(bound = "")]
pub struct BoundingBox<C: Coord> {
    pub min: Point<C>,
    pub max: Point<C>,
}

impl<C: Coord> BoundingBox<C> {
    pub fn of<'a, I: IntoIterator<Item = &'a Point<C>>>(points: I) -> Option<Self> {
        let mut it = points.into_iter();
        let first = *it.next()?;
        let mut bb = BoundingBox { min: first, max: first };
        for p in it {
            bb.min.x = bb.min.x.min(p.x);
            bb.min.y = bb.min.y.min(p.y);
            bb.max.x = bb.max.x.max(p.x);
            bb.max.y = bb.max.y.max(p.y);
        }
        Some(bb)
    }

    pub fn padded(self, ring: C) -> Self {
        BoundingBox {
            min: self.min.offset(-ring, -ring),
            max: self.max.offset(ring, ring),
        }
    }

    pub fn contains(&self, p: &Point<C>) -> bool {
        self.min.x <= p.x && p.x <= self.max.x && self.min.y <= p.y && p.y <= self.max.y
    }

    pub fn on_frame(&self, p: &Point<C>) -> bool {
        p.x == self.min.x || p.x == self.max.x || p.y == self.min.y || p.y == self.max.y
    }

    pub fn width(&self) -> usize {
        (self.max.x - self.min.x).to_usize().unwrap_or(0) + 1
    }

    pub fn height(&self) -> usize {
        (self.max.y - self.min.y).to_usize().unwrap_or(0) + 1
    }

    /// All lattice points of the box, lexicographically.
    pub fn points(&self) -> impl Iterator<Item = Point<C>> + '_ {
        let span = |lo: C, hi: C| std::iter::successors(Some(lo), move |&v| (v < hi).then(|| v + C::one()));
        span(self.min.x, self.max.x).flat_map(move |x| span(self.min.y, self.max.y).map(move |y| Point::new(x, y)))
    }
}

/// The digital rectangle `[x0, x1]_Z × [y0, y1]_Z`.
pub fn rectangle<C: Coord>(x0: C, x1: C, y0: C, y1: C) -> PointSet<C> {
    BoundingBox {
        min: Point::new(x0, y0),
        max: Point::new(x1, y1),
    }
    .points()
    .collect()
}

/// One part of a decomposition.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
#[serde(bound = "")]
pub struct Component<C: Coord> {
    pub points: PointSet<C>,
    /// The component is infinite; `points` then holds only its restriction
    /// to the decomposition's frame box.
    pub unbounded: bool,
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
#[serde(bound = "")]
pub struct ComponentDecomposition<C: Coord> {
    /// Finite components ordered by their smallest point, then the
    /// unbounded one (if any) last.
    pub components: Vec<Component<C>>,
    /// Box to which an unbounded component is restricted.
    pub frame: Option<BoundingBox<C>>,
}

impl<C: Coord> ComponentDecomposition<C> {
    pub fn len(&self) -> usize {
        self.components.len()
    }

    pub fn is_empty(&self) -> bool {
        self.components.is_empty()
    }

    pub fn finite(&self) -> impl Iterator<Item = &Component<C>> {
        self.components.iter().filter(|c| !c.unbounded)
    }

    pub fn unbounded(&self) -> Option<&Component<C>> {
        self.components.iter().find(|c| c.unbounded)
    }
}

/// `N*(X, κ, x)`: `x` together with its neighbors in `X`.
pub fn closed_neighborhood<C: Coord>(image: &DigitalImage<C>, x: Point<C>) -> Result<PointSet<C>> {
    if !image.contains(&x) {
        return Err(Error::NotInImage(x.to_string()));
    }
    let mut out: PointSet<C> = image.neighbors(x).collect();
    out.insert(x);
    Ok(out)
}

/// Flood fill from `seed` inside `within`, marking `seen`.
fn flood<C: Coord, F>(seed: Point<C>, kind: AdjacencyKind, within: F, seen: &mut PointSet<C>) -> PointSet<C>
where
    F: Fn(&Point<C>) -> bool,
{
    let mut part = PointSet::new();
    let mut queue = VecDeque::from([seed]);
    seen.insert(seed);
    while let Some(p) = queue.pop_front() {
        part.insert(p);
        for q in kind.neighbors(p) {
            if within(&q) && seen.insert(q) {
                queue.push_back(q);
            }
        }
    }
    part
}

/// Empty images count as connected.
pub fn is_connected<C: Coord>(image: &DigitalImage<C>) -> bool {
    let Some(&first) = image.points().first() else {
        return true;
    };
    let mut seen = PointSet::new();
    flood(first, image.adjacency(), |q| image.contains(q), &mut seen).len() == image.len()
}

/// Maximal `kind`-connected subsets of a finite set.
pub fn components<C: Coord>(set: &PointSet<C>, kind: AdjacencyKind) -> ComponentDecomposition<C> {
    let mut seen = PointSet::new();
    let mut parts = Vec::new();
    for &p in set {
        if seen.contains(&p) {
            continue;
        }
        parts.push(Component {
            points: flood(p, kind, |q| set.contains(q), &mut seen),
            unbounded: false,
        });
    }
    ComponentDecomposition {
        components: parts,
        frame: None,
    }
}

/// Components of `Z² \ set` under `kind`.
///
/// The bounding box of `set` padded by one ring is flood filled. The padding
/// ring lies entirely outside `set` and is itself 4-connected, so everything
/// beyond the box joins the single component containing the ring; that
/// component is reported with `unbounded = true`.
pub fn complement_components<C: Coord>(
    set: &PointSet<C>,
    kind: AdjacencyKind,
) -> Result<ComponentDecomposition<C>> {
    let frame = BoundingBox::of(set).ok_or(Error::Empty)?.padded(C::one());
    let inside = |q: &Point<C>| frame.contains(q) && !set.contains(q);
    let mut seen = PointSet::new();
    let outer = flood(frame.min, kind, inside, &mut seen);
    let mut parts = Vec::new();
    for p in frame.points() {
        if !inside(&p) || seen.contains(&p) {
            continue;
        }
        let part = flood(p, kind, inside, &mut seen);
        // The frame ring is connected, so only `outer` can touch it.
        debug_assert!(!part.iter().any(|q| frame.on_frame(q)));
        parts.push(Component {
            points: part,
            unbounded: false,
        });
    }
    parts.push(Component {
        points: outer,
        unbounded: true,
    });
    Ok(ComponentDecomposition {
        components: parts,
        frame: Some(frame),
    })
}

/// Whether some point of `a` is adjacent to some point of `b`.
pub fn sets_adjacent<C: Coord>(a: &PointSet<C>, b: &PointSet<C>, kind: AdjacencyKind) -> Result<bool> {
    let (small, large) = if a.len() <= b.len() { (a, b) } else { (b, a) };
    if let Some(p) = small.iter().find(|p| large.contains(p)) {
        return Err(Error::NotDisjoint(p.to_string()));
    }
    Ok(small.iter().any(|&p| kind.neighbors(p).any(|q| large.contains(&q))))
}
