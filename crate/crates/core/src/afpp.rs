//! Approximate fixed points, an exhaustive decision procedure for the
//! approximate fixed point property (AFPP), and constructors for explicit
//! continuous self-maps without approximate fixed points.
//!
//! The exhaustive search is a constraint-satisfaction problem over the
//! self-maps of `X`: each point `x` must be sent outside its closed
//! neighborhood `N*(X, x)` (otherwise `x` is an approximate fixed point of
//! every completion), and into `N*(X, f(p))` for every already assigned
//! neighbor `p` (continuity). A complete assignment is a witness that `X`
//! lacks the AFPP; exhausting the space proves the property.

use std::collections::{BTreeMap, VecDeque};

use serde::Serialize;

use crate::curves::{trace_bounding_curve, Curve};
use crate::error::{Error, Result};
use crate::lattice::{
    adjacent_or_equal, closed_neighborhood, complement_components, rectangle, AdjacencyKind, DigitalImage, Point,
    PointSet,
};
use crate::maps::{compose, PointMap};
use crate::retract::hole_retraction_with_curve;
use crate::scalar::Coord;

/// Default node budget for [`check_afpp_exhaustive`].
pub const DEFAULT_BUDGET: u64 = 10_000_000;

/// `{x : f(x) ⇌ x}` for a self-map `f`.
pub fn approximate_fixed_points<C: Coord>(f: &PointMap<C>) -> Result<PointSet<C>> {
    if !f.is_self_map() {
        return Err(Error::NotSelfMap);
    }
    let kind = f.domain().adjacency();
    Ok(f
        .table()
        .iter()
        .filter(|(&x, &fx)| adjacent_or_equal(x, fx, kind))
        .map(|(&x, _)| x)
        .collect())
}

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Outcome {
    HasAfpp,
    LacksAfpp,
    Unknown,
}

impl Outcome {
    pub fn name(self) -> &'static str {
        match self {
            Outcome::HasAfpp => "HAS_AFPP",
            Outcome::LacksAfpp => "LACKS_AFPP",
            Outcome::Unknown => "UNKNOWN",
        }
    }
}

/// Result of the exhaustive search.
#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
#[serde(bound = "")]
pub struct AfppVerdict<C: Coord> {
    pub outcome: Outcome,
    /// A continuous self-map with no approximate fixed point; present iff
    /// the outcome is `LacksAfpp`.
    pub witness: Option<PointMap<C>>,
    pub nodes_explored: u64,
    pub budget: u64,
}

/// Search the continuous self-maps of `image` for one without approximate
/// fixed points.
///
/// Variables are the points in breadth-first order from the
/// lexicographically smallest point (restarting per component), so every
/// variable after the first of its component has an assigned neighbor.
/// Values are tried in lexicographic order. Each value assignment counts
/// as one node; reaching `budget` nodes yields `Unknown`.
pub fn check_afpp_exhaustive<C: Coord>(image: &DigitalImage<C>, budget: u64) -> Result<AfppVerdict<C>> {
    if image.is_empty() {
        return Err(Error::Empty);
    }
    let search = Search::new(image);
    let (outcome, assignment, nodes) = search.run(budget);
    let witness = match assignment {
        Some(values) => {
            let table: BTreeMap<_, _> = values
                .iter()
                .enumerate()
                .map(|(i, &v)| (search.points[i], search.points[v]))
                .collect();
            let map = PointMap::new(image.clone(), image.clone(), table)?;
            if !map.is_continuous() || !approximate_fixed_points(&map)?.is_empty() {
                return Err(Error::Inconsistent("search witness failed re-verification".into()));
            }
            Some(map)
        }
        None => None,
    };
    Ok(AfppVerdict {
        outcome,
        witness,
        nodes_explored: nodes,
        budget,
    })
}

struct Search<C: Coord> {
    points: Vec<Point<C>>,
    kind: AdjacencyKind,
    /// Closed neighborhoods as sorted index lists.
    closed: Vec<Vec<usize>>,
    /// Variable order.
    order: Vec<usize>,
    /// For each position in `order`, the neighbors assigned earlier.
    earlier: Vec<Vec<usize>>,
}

impl<C: Coord> Search<C> {
    fn new(image: &DigitalImage<C>) -> Self {
        let points: Vec<Point<C>> = image.points().iter().copied().collect();
        let index: BTreeMap<Point<C>, usize> = points.iter().enumerate().map(|(i, &p)| (p, i)).collect();
        let closed: Vec<Vec<usize>> = points
            .iter()
            .map(|&p| {
                let mut v: Vec<usize> = closed_neighborhood(image, p)
                    .expect("points come from the image")
                    .iter()
                    .map(|q| index[q])
                    .collect();
                v.sort_unstable();
                v
            })
            .collect();

        let n = points.len();
        let mut position = vec![usize::MAX; n];
        let mut order = Vec::with_capacity(n);
        for root in 0..n {
            if position[root] != usize::MAX {
                continue;
            }
            position[root] = order.len();
            order.push(root);
            let mut queue = VecDeque::from([root]);
            while let Some(v) = queue.pop_front() {
                for &w in &closed[v] {
                    if position[w] == usize::MAX {
                        position[w] = order.len();
                        order.push(w);
                        queue.push_back(w);
                    }
                }
            }
        }
        let earlier = order
            .iter()
            .enumerate()
            .map(|(k, &v)| closed[v].iter().copied().filter(|&w| w != v && position[w] < k).collect())
            .collect();
        Search {
            points,
            kind: image.adjacency(),
            closed,
            order,
            earlier,
        }
    }

    fn close(&self, a: usize, b: usize) -> bool {
        adjacent_or_equal(self.points[a], self.points[b], self.kind)
    }

    fn candidates(&self, k: usize, values: &[usize]) -> Vec<usize> {
        let v = self.order[k];
        let earlier = &self.earlier[k];
        let pool: Box<dyn Iterator<Item = usize> + '_> = match earlier.first() {
            None => Box::new(0..self.points.len()),
            Some(&u) => Box::new(self.closed[values[u]].iter().copied()),
        };
        pool.filter(|&c| !self.close(v, c))
            .filter(|&c| earlier.iter().all(|&u| self.close(values[u], c)))
            .collect()
    }

    fn run(&self, budget: u64) -> (Outcome, Option<Vec<usize>>, u64) {
        let n = self.points.len();
        let mut values = vec![usize::MAX; n];
        let mut nodes = 0u64;
        // One frame per assigned depth: candidate list and next position.
        let mut frames: Vec<(Vec<usize>, usize)> = vec![(self.candidates(0, &values), 0)];
        while !frames.is_empty() {
            let depth = frames.len() - 1;
            let (cands, next) = &mut frames[depth];
            if *next == cands.len() {
                values[self.order[depth]] = usize::MAX;
                frames.pop();
                continue;
            }
            if nodes == budget {
                return (Outcome::Unknown, None, nodes);
            }
            nodes += 1;
            values[self.order[depth]] = cands[*next];
            *next += 1;
            if depth + 1 == n {
                return (Outcome::LacksAfpp, Some(values), nodes);
            }
            let child = self.candidates(depth + 1, &values);
            frames.push((child, 0));
        }
        (Outcome::HasAfpp, None, nodes)
    }
}

/// Neighborhood separation: for each `x ∈ S`, `N*(X, x) ∩ N*(X, F(x)) = ∅`.
pub fn separation_holds<C: Coord>(f: &PointMap<C>, curve: &Curve<C>, image: &DigitalImage<C>) -> Result<bool> {
    Ok(separation_violation(f, curve, image)?.is_none())
}

/// First curve point at which neighborhood separation fails.
pub fn separation_violation<C: Coord>(
    f: &PointMap<C>,
    curve: &Curve<C>,
    image: &DigitalImage<C>,
) -> Result<Option<Point<C>>> {
    let s = curve.point_set();
    if *f.domain().points() != s || !f.image().is_subset(&s) {
        return Err(Error::Precondition("F is not a self-map of the curve".into()));
    }
    if !f.is_continuous() {
        return Err(Error::Precondition("F is not continuous on the curve".into()));
    }
    if let Some(p) = s.iter().find(|p| !image.contains(p)) {
        return Err(Error::Precondition(format!("curve point {p} is not in X")));
    }
    for &x in curve.points() {
        let near_x = closed_neighborhood(image, x)?;
        let near_fx = closed_neighborhood(image, f.apply(x))?;
        if !near_x.is_disjoint(&near_fx) {
            return Ok(Some(x));
        }
    }
    Ok(None)
}

/// `f = F ∘ r` for the hole retraction `r : X → S` of the convex disk
/// `disk`, as a self-map of `(X, c₂)`. Verified continuous and free of
/// approximate fixed points before it is returned.
pub fn construct_no_afp_map<C: Coord>(
    x: &PointSet<C>,
    disk: &PointSet<C>,
    f: &PointMap<C>,
) -> Result<PointMap<C>> {
    let (r, curve) = hole_retraction_with_curve(x, disk)
        .map_err(|e| Error::Precondition(format!("hole structure: {e}")))?;
    compose_checked(x, &r, &curve, f)
}

fn compose_checked<C: Coord>(
    x: &PointSet<C>,
    r: &PointMap<C>,
    curve: &Curve<C>,
    f: &PointMap<C>,
) -> Result<PointMap<C>> {
    let image = DigitalImage::new(x.clone(), AdjacencyKind::C2);
    if let Some(p) = separation_violation(f, curve, &image)? {
        return Err(Error::Precondition(format!("neighborhoods of {p} and F({p}) meet")));
    }
    let g = compose(f, r)?.with_codomain(image)?;
    if !g.is_continuous() {
        return Err(Error::Inconsistent("F ∘ r is not continuous".into()));
    }
    if let Some(p) = approximate_fixed_points(&g)?.first() {
        return Err(Error::Inconsistent(format!("F ∘ r has an approximate fixed point at {p}")));
    }
    Ok(g)
}

/// `x ↦ center2 - x` on the curve, where `center2` is twice the center.
pub fn point_reflection<C: Coord>(curve: &Curve<C>, center2: (C, C)) -> Result<PointMap<C>> {
    let s = DigitalImage::new(curve.point_set(), curve.kind());
    let reflect = |p: Point<C>| Point::new(center2.0 - p.x, center2.1 - p.y);
    if let Some(p) = s.points().iter().find(|&&p| !s.contains(&reflect(p))) {
        return Err(Error::Precondition(format!(
            "curve is not symmetric about ({}, {})/2: {p} has no mirror image",
            center2.0, center2.1
        )));
    }
    PointMap::from_fn(s.clone(), s, reflect)
}

/// `s_i ↦ s_{(i + k) mod m}`. Continuous on simple closed curves.
pub fn cycle_shift_map<C: Coord>(curve: &Curve<C>, k: i64) -> PointMap<C> {
    let s = DigitalImage::new(curve.point_set(), curve.kind());
    let table = (0..curve.len()).map(|i| (curve.points()[i], curve.at(i, k))).collect();
    PointMap::new(s.clone(), s, table).expect("a shift permutes the curve")
}

/// Which self-map of the bounding curve to compose with the retraction.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Serialize)]
#[serde(bound = "", rename_all = "snake_case", tag = "kind")]
pub enum CurveMap<C: Coord> {
    /// Point reflection; `center2` is twice the center.
    Reflect { center2: (C, C) },
    Shift { k: i64 },
}

impl<C: Coord> CurveMap<C> {
    pub fn build(self, curve: &Curve<C>) -> Result<PointMap<C>> {
        match self {
            CurveMap::Reflect { center2 } => point_reflection(curve, center2),
            CurveMap::Shift { k } => Ok(cycle_shift_map(curve, k)),
        }
    }
}

/// Twice the center of the curve's bounding box.
pub fn box_center2<C: Coord>(curve: &Curve<C>) -> (C, C) {
    let bb = crate::lattice::BoundingBox::of(curve.points()).expect("curves are nonempty");
    (bb.min.x + bb.max.x, bb.min.y + bb.max.y)
}

/// An explicit witness produced by the retraction construction.
#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
#[serde(bound = "")]
pub struct ConstructedWitness<C: Coord> {
    /// The convex disk filling the hole.
    pub disk: PointSet<C>,
    pub curve: Curve<C>,
    pub curve_map: CurveMap<C>,
    pub map: PointMap<C>,
}

/// Build `F ∘ r` for a given hole disk and curve map choice.
pub fn construct_with<C: Coord>(
    x: &PointSet<C>,
    disk: &PointSet<C>,
    choice: CurveMap<C>,
) -> Result<ConstructedWitness<C>> {
    let (r, curve) = hole_retraction_with_curve(x, disk)
        .map_err(|e| Error::Precondition(format!("hole structure: {e}")))?;
    let f = choice.build(&curve)?;
    let map = compose_checked(x, &r, &curve, &f)?;
    Ok(ConstructedWitness {
        disk: disk.clone(),
        curve,
        curve_map: choice,
        map,
    })
}

/// The hole plus the points of `x` that are 4-adjacent to it.
pub fn filled_hole<C: Coord>(x: &PointSet<C>, hole: &PointSet<C>) -> PointSet<C> {
    let mut filled = hole.clone();
    for &p in hole {
        filled.extend(AdjacencyKind::C1.neighbors(p).filter(|q| x.contains(q)));
    }
    filled
}

/// Look for a hole of `x` (a finite c₂-component of the complement) whose
/// filling is a convex disk and a curve map whose values keep neighborhoods apart.
/// Holes are tried in order of their smallest point; for each, the point
/// reflection about the curve's box center, then shifts `k = 2 … m−2`.
pub fn find_constructed_witness<C: Coord>(x: &PointSet<C>) -> Option<ConstructedWitness<C>> {
    let holes = complement_components(x, AdjacencyKind::C2).ok()?;
    for hole in holes.finite() {
        let disk = filled_hole(x, &hole.points);
        let Ok(curve) = trace_bounding_curve(&disk) else {
            continue;
        };
        let m = curve.len() as i64;
        let choices = std::iter::once(CurveMap::Reflect {
            center2: box_center2(&curve),
        })
        .chain((2..=m - 2).map(|k| CurveMap::Shift { k }));
        for choice in choices {
            if let Ok(w) = construct_with(x, &disk, choice) {
                return Some(w);
            }
        }
    }
    None
}

/// Exhaustive verdict plus, when the search is inconclusive on a c₂ image,
/// a constructed witness if one is found.
#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
#[serde(bound = "")]
pub struct AfppReport<C: Coord> {
    pub verdict: AfppVerdict<C>,
    pub constructed: Option<ConstructedWitness<C>>,
}

impl<C: Coord> AfppReport<C> {
    /// The image provably lacks the AFPP.
    pub fn lacks_afpp(&self) -> bool {
        self.verdict.outcome == Outcome::LacksAfpp || self.constructed.is_some()
    }

    pub fn has_afpp(&self) -> bool {
        self.verdict.outcome == Outcome::HasAfpp
    }
}

pub fn decide_afpp<C: Coord>(image: &DigitalImage<C>, budget: u64) -> Result<AfppReport<C>> {
    let verdict = check_afpp_exhaustive(image, budget)?;
    let constructed = if verdict.outcome == Outcome::Unknown && image.adjacency() == AdjacencyKind::C2 {
        find_constructed_witness(image.points())
    } else {
        None
    };
    Ok(AfppReport { verdict, constructed })
}

/// The image `[-3, 3]² \ {|x| + |y| ≤ 1}` with its hole disk
/// `{|x| + |y| ≤ 2}`, the point reflection of the diamond curve, and the
/// resulting map without approximate fixed points.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ReflectedHoleExample<C: Coord> {
    pub image: DigitalImage<C>,
    pub disk: PointSet<C>,
    pub curve: Curve<C>,
    pub reflection: PointMap<C>,
    pub retraction: PointMap<C>,
    pub map: PointMap<C>,
}

pub fn reflected_hole_map<C: Coord>() -> (DigitalImage<C>, PointMap<C>) {
    let ex = reflected_hole_example();
    (ex.image, ex.map)
}

pub fn reflected_hole_example<C: Coord>() -> ReflectedHoleExample<C> {
    let three = C::from(3).expect("small constant");
    let two = C::from(2).expect("small constant");
    let l1 = |p: &Point<C>| p.x.abs() + p.y.abs();
    let square = rectangle(-three, three, -three, three);
    let x: PointSet<C> = square.iter().copied().filter(|p| l1(p) > C::one()).collect();
    let disk: PointSet<C> = square.iter().copied().filter(|p| l1(p) <= two).collect();
    let (retraction, curve) = hole_retraction_with_curve(&x, &disk).expect("the diamond hole has a retraction");
    let reflection = point_reflection(&curve, (C::zero(), C::zero())).expect("the diamond is centrally symmetric");
    let map = compose_checked(&x, &retraction, &curve, &reflection).expect("the reflection keeps neighborhoods apart");
    ReflectedHoleExample {
        image: DigitalImage::new(x, AdjacencyKind::C2),
        disk,
        curve,
        reflection,
        retraction,
        map,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::curves::is_simple_closed_curve;
    use AdjacencyKind::{C1, C2};

    fn p(x: i64, y: i64) -> Point<i64> {
        Point::new(x, y)
    }

    fn diamond8() -> Curve<i64> {
        Curve::new(
            vec![p(2, 0), p(1, 1), p(0, 2), p(-1, 1), p(-2, 0), p(-1, -1), p(0, -2), p(1, -1)],
            C2,
        )
        .unwrap()
    }

    fn diamond4() -> Curve<i64> {
        Curve::new(vec![p(0, 0), p(1, 1), p(2, 0), p(1, -1)], C2).unwrap()
    }

    #[test]
    fn identity_fixes_everything() {
        let x = DigitalImage::new(rectangle(0, 2, 0, 1), C1);
        assert_eq!(approximate_fixed_points(&PointMap::identity(&x)).unwrap(), *x.points());
    }

    #[test]
    fn shift_by_one_on_diamond_is_approximately_fixed_everywhere() {
        let f = cycle_shift_map(&diamond8(), 1);
        assert!(f.is_continuous());
        assert_eq!(approximate_fixed_points(&f).unwrap().len(), 8);
    }

    #[test]
    fn shift_by_two_on_small_diamond() {
        let f = cycle_shift_map(&diamond4(), 2);
        assert_eq!(f.apply(p(0, 0)), p(2, 0));
        assert!(f.is_continuous());
        assert!(approximate_fixed_points(&f).unwrap().is_empty());
        let id = cycle_shift_map(&diamond4(), 0);
        assert_eq!(approximate_fixed_points(&id).unwrap().len(), 4);
        assert_eq!(cycle_shift_map(&diamond4(), -2), f);
    }

    #[test]
    fn shift_fixed_point_rule_on_larger_curve() {
        let c = diamond8();
        for k in -9i64..=9 {
            let f = cycle_shift_map(&c, k);
            let none = approximate_fixed_points(&f).unwrap().is_empty();
            let r = k.rem_euclid(8);
            assert_eq!(none, !matches!(r, 0 | 1 | 7), "k = {k}");
        }
    }

    #[test]
    fn not_a_self_map() {
        let x = DigitalImage::new(rectangle(0, 1, 0, 0), C1);
        let y = DigitalImage::new(rectangle(0, 2, 0, 0), C1);
        let f = PointMap::constant(&x, &y, p(2, 0)).unwrap();
        assert_eq!(approximate_fixed_points(&f), Err(Error::NotSelfMap));
    }

    #[test]
    fn small_oracle_verdicts() {
        let interval = DigitalImage::new(rectangle(0, 3, 0, 0), C1);
        assert_eq!(check_afpp_exhaustive(&interval, DEFAULT_BUDGET).unwrap().outcome, Outcome::HasAfpp);

        let square = DigitalImage::new(rectangle(0, 1, 0, 1), C1);
        let v = check_afpp_exhaustive(&square, DEFAULT_BUDGET).unwrap();
        assert_eq!(v.outcome, Outcome::LacksAfpp);
        let w = v.witness.unwrap();
        // The lexicographically first witness is the half-turn of the 4-cycle.
        assert_eq!(w.apply(p(0, 0)), p(1, 1));
        assert_eq!(w.apply(p(0, 1)), p(1, 0));

        let ring = DigitalImage::new(diamond4().point_set(), C2);
        assert_eq!(check_afpp_exhaustive(&ring, DEFAULT_BUDGET).unwrap().outcome, Outcome::LacksAfpp);

        let single = DigitalImage::from_points([p(4, 4)], C2);
        assert_eq!(check_afpp_exhaustive(&single, 10).unwrap().outcome, Outcome::HasAfpp);
    }

    #[test]
    fn budget_exhaustion_is_unknown() {
        let cube = DigitalImage::new(rectangle(0, 2, 0, 2), C2);
        let v = check_afpp_exhaustive(&cube, 3).unwrap();
        assert_eq!(v.outcome, Outcome::Unknown);
        assert_eq!(v.nodes_explored, 3);
        assert!(v.witness.is_none());
    }

    #[test]
    fn reflection_maps() {
        let f = point_reflection(&diamond8(), (0, 0)).unwrap();
        assert_eq!(f.apply(p(2, 0)), p(-2, 0));
        assert_eq!(compose(&f, &f).unwrap(), PointMap::identity(f.domain()));

        let ring = trace_bounding_curve(&rectangle(0, 2, 0, 2)).unwrap();
        let g = point_reflection(&ring, (2, 2)).unwrap();
        assert_eq!(g.apply(p(0, 0)), p(2, 2));
        assert!(point_reflection(&ring, (0, 0)).is_err());
    }

    #[test]
    fn condition_one_cases() {
        let ex = reflected_hole_example::<i64>();
        assert!(separation_holds(&ex.reflection, &ex.curve, &ex.image).unwrap());
        let id = PointMap::identity(ex.reflection.domain());
        assert!(!separation_holds(&id, &ex.curve, &ex.image).unwrap());
        let shift = cycle_shift_map(&ex.curve, 1);
        assert!(!separation_holds(&shift, &ex.curve, &ex.image).unwrap());
    }

    #[test]
    fn example_image() {
        let ex = reflected_hole_example::<i64>();
        assert_eq!(ex.image.len(), 44);
        assert!(is_simple_closed_curve(&ex.curve));
        assert_eq!(ex.curve.len(), 8);
        assert!(ex.map.is_continuous());
        assert!(approximate_fixed_points(&ex.map).unwrap().is_empty());
        assert_eq!(ex.map.apply(p(3, 3)), p(-2, 0));

        let (img, f) = reflected_hole_map::<i32>();
        assert_eq!(img.len(), 44);
        assert_eq!(f.apply(Point::new(3, 3)), Point::new(-2, 0));
    }

    #[test]
    fn constructor_rejects_identity() {
        let ex = reflected_hole_example::<i64>();
        let id = PointMap::identity(ex.reflection.domain());
        let err = construct_no_afp_map(ex.image.points(), &ex.disk, &id).unwrap_err();
        assert!(matches!(err, Error::Precondition(ref m) if m.contains("meet")), "{err}");
        let f = construct_no_afp_map(ex.image.points(), &ex.disk, &ex.reflection).unwrap();
        assert_eq!(f, ex.map);
    }

    #[test]
    fn finds_constructed_witness_for_example() {
        let ex = reflected_hole_example::<i64>();
        let w = find_constructed_witness(ex.image.points()).unwrap();
        assert_eq!(w.disk, ex.disk);
        assert!(matches!(w.curve_map, CurveMap::Reflect { center2: (0, 0) }));
        assert!(find_constructed_witness(&rectangle(0i64, 3, 0, 3)).is_none());
    }
}
