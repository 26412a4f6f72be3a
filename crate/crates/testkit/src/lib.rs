//! Independent oracles and instance generators for the digitop test suites.
//!
//! Nothing here calls the library's search or retraction code: the oracles
//! work from the definitions directly (all maps, all subsets), so they can
//! check the library's faster procedures.

use std::collections::{BTreeSet, VecDeque};

use digitop_core::curves::Curve;
use digitop_core::lattice::rectangle;
use digitop_core::maps::PointMap;
use digitop_core::{AdjacencyKind, DigitalImage, Point, PointSet};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub type P = Point<i64>;
pub type Set = PointSet<i64>;

pub fn p(x: i64, y: i64) -> P {
    Point::new(x, y)
}

pub fn set(pts: &[(i64, i64)]) -> Set {
    pts.iter().map(|&(x, y)| p(x, y)).collect()
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Adjacency from coordinate differences alone.
pub fn adjacent(a: P, b: P, kind: AdjacencyKind) -> bool {
    let (dx, dy) = ((a.x - b.x).abs(), (a.y - b.y).abs());
    match kind {
        AdjacencyKind::C1 => dx + dy == 1,
        AdjacencyKind::C2 => dx.max(dy) == 1,
    }
}

pub fn adjacent_or_equal(a: P, b: P, kind: AdjacencyKind) -> bool {
    a == b || adjacent(a, b, kind)
}

/// Edge-test continuity of `f` over `domain`, pair by pair.
pub fn continuous_by_pairs(domain: &Set, f: impl Fn(P) -> P, from: AdjacencyKind, to: AdjacencyKind) -> bool {
    domain.iter().all(|&a| {
        domain
            .iter()
            .filter(|&&b| adjacent(a, b, from))
            .all(|&b| adjacent_or_equal(f(a), f(b), to))
    })
}

/// Counts of bounded and unbounded `kind`-components of `Z² \ s`, found
/// by flood fill inside the bounding box grown by one.
pub fn complement_counts(s: &Set, kind: AdjacencyKind) -> (usize, usize) {
    let x0 = s.iter().map(|q| q.x).min().expect("nonempty") - 1;
    let x1 = s.iter().map(|q| q.x).max().expect("nonempty") + 1;
    let y0 = s.iter().map(|q| q.y).min().expect("nonempty") - 1;
    let y1 = s.iter().map(|q| q.y).max().expect("nonempty") + 1;
    let mut seen: BTreeSet<P> = BTreeSet::new();
    let (mut finite, mut infinite) = (0, 0);
    for start in rectangle(x0, x1, y0, y1) {
        if s.contains(&start) || seen.contains(&start) {
            continue;
        }
        let mut touches_frame = false;
        let mut queue = VecDeque::from([start]);
        seen.insert(start);
        while let Some(a) = queue.pop_front() {
            touches_frame |= a.x == x0 || a.x == x1 || a.y == y0 || a.y == y1;
            for dx in -1..=1 {
                for dy in -1..=1 {
                    let b = p(a.x + dx, a.y + dy);
                    let inside = (x0..=x1).contains(&b.x) && (y0..=y1).contains(&b.y);
                    if inside && adjacent(a, b, kind) && !s.contains(&b) && seen.insert(b) {
                        queue.push_back(b);
                    }
                }
            }
        }
        if touches_frame {
            infinite += 1;
        } else {
            finite += 1;
        }
    }
    (finite, infinite)
}

/// Whether `q` lies in the Euclidean convex hull of `pts`: on a segment or
/// in a triangle spanned by members. Cubic; for small sets.
pub fn in_hull(pts: &[P], q: P) -> bool {
    let cross = |o: P, a: P, b: P| (a.x - o.x) * (b.y - o.y) - (a.y - o.y) * (b.x - o.x);
    let on_segment = |a: P, b: P| {
        cross(a, b, q) == 0 && q.x >= a.x.min(b.x) && q.x <= a.x.max(b.x) && q.y >= a.y.min(b.y) && q.y <= a.y.max(b.y)
    };
    let n = pts.len();
    for i in 0..n {
        if pts[i] == q {
            return true;
        }
        for j in i + 1..n {
            if on_segment(pts[i], pts[j]) {
                return true;
            }
            for k in j + 1..n {
                let (a, b, c) = (pts[i], pts[j], pts[k]);
                let (d1, d2, d3) = (cross(a, b, q), cross(b, c, q), cross(c, a, q));
                let neg = d1 < 0 || d2 < 0 || d3 < 0;
                let pos = d1 > 0 || d2 > 0 || d3 > 0;
                if !(neg && pos) && cross(a, b, c) != 0 {
                    return true;
                }
            }
        }
    }
    false
}

/// Whether `subset` is connected, by breadth-first search from scratch.
pub fn connected_by_bfs(subset: &[P], kind: AdjacencyKind) -> bool {
    let Some(&first) = subset.first() else {
        return true;
    };
    let mut seen = vec![false; subset.len()];
    seen[0] = true;
    let mut queue = VecDeque::from([first]);
    let mut count = 1;
    while let Some(a) = queue.pop_front() {
        for (i, &b) in subset.iter().enumerate() {
            if !seen[i] && adjacent(a, b, kind) {
                seen[i] = true;
                count += 1;
                queue.push_back(b);
            }
        }
    }
    count == subset.len()
}

/// Continuity straight from the connected-set definition: every connected
/// subset of the domain has a connected image. Exponential; `|X| <= 12`.
pub fn continuous_by_connected_images(f: &PointMap<i64>) -> bool {
    let pts: Vec<P> = f.domain().points().iter().copied().collect();
    assert!(pts.len() <= 12, "subset enumeration is exponential");
    let (dk, ck) = (f.domain().adjacency(), f.codomain().adjacency());
    (1u32..(1 << pts.len())).all(|mask| {
        let subset: Vec<P> = (0..pts.len()).filter(|i| mask >> i & 1 == 1).map(|i| pts[i]).collect();
        if !connected_by_bfs(&subset, dk) {
            return true;
        }
        let image: BTreeSet<P> = subset.iter().map(|&q| f.apply(q)).collect();
        connected_by_bfs(&image.into_iter().collect::<Vec<_>>(), ck)
    })
}

/// Enumerate all `n^n` self-maps of `image`, keep the continuous ones, and
/// report whether any has no approximate fixed point.
pub fn brute_force_lacks_afpp(image: &DigitalImage<i64>) -> bool {
    let pts: Vec<P> = image.points().iter().copied().collect();
    let n = pts.len();
    if n == 0 {
        return true;
    }
    let kind = image.adjacency();
    let close: Vec<Vec<bool>> = pts
        .iter()
        .map(|&a| pts.iter().map(|&b| adjacent_or_equal(a, b, kind)).collect())
        .collect();
    let edges: Vec<(usize, usize)> = (0..n)
        .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
        .filter(|&(i, j)| adjacent(pts[i], pts[j], kind))
        .collect();
    let mut f = vec![0usize; n];
    loop {
        let continuous = edges.iter().all(|&(i, j)| close[f[i]][f[j]]);
        if continuous && (0..n).all(|i| !close[i][f[i]]) {
            return true;
        }
        let mut k = 0;
        loop {
            f[k] += 1;
            if f[k] < n {
                break;
            }
            f[k] = 0;
            k += 1;
            if k == n {
                return false;
            }
        }
    }
}

fn normalized(s: &Set) -> Vec<P> {
    let mx = s.iter().map(|q| q.x).min().unwrap_or(0);
    let my = s.iter().map(|q| q.y).min().unwrap_or(0);
    s.iter().map(|q| p(q.x - mx, q.y - my)).collect::<Set>().into_iter().collect()
}

/// All `kind`-connected sets of exactly `size` points, up to translation.
pub fn connected_sets(size: usize, kind: AdjacencyKind) -> Vec<Set> {
    let mut level: BTreeSet<Vec<P>> = BTreeSet::from([vec![p(0, 0)]]);
    for _ in 1..size {
        let mut next = BTreeSet::new();
        for shape in &level {
            let s: Set = shape.iter().copied().collect();
            for &q in shape {
                for r in kind.neighbors(q) {
                    if !s.contains(&r) {
                        let mut grown = s.clone();
                        grown.insert(r);
                        next.insert(normalized(&grown));
                    }
                }
            }
        }
        level = next;
    }
    level.into_iter().map(|v| v.into_iter().collect()).collect()
}

/// Chordless cycles of `kind` inside `[0, w) × [0, h)` with length in
/// `[min_len, max_len]`, each listed once, at most `limit` of them.
pub fn induced_cycles(
    kind: AdjacencyKind,
    w: i64,
    h: i64,
    min_len: usize,
    max_len: usize,
    limit: usize,
) -> Vec<Curve<i64>> {
    let inside = |q: &P| q.x >= 0 && q.y >= 0 && q.x < w && q.y < h;
    let mut out = Vec::new();

    fn dfs(
        path: &mut Vec<P>,
        kind: AdjacencyKind,
        inside: &dyn Fn(&P) -> bool,
        range: (usize, usize),
        limit: usize,
        out: &mut Vec<Curve<i64>>,
    ) {
        if out.len() >= limit {
            return;
        }
        let start = path[0];
        let last = *path.last().expect("nonempty path");
        for q in kind.neighbors(last) {
            if !inside(&q) || q <= start || path.contains(&q) {
                continue;
            }
            // No chord from q to earlier interior path points.
            if path.iter().skip(1).take(path.len().saturating_sub(2)).any(|&r| adjacent(q, r, kind)) {
                continue;
            }
            let closes = path.len() >= 2 && adjacent(q, start, kind);
            path.push(q);
            if closes {
                if path.len() >= range.0 && path[1] < q && out.len() < limit {
                    out.push(Curve::new(path.clone(), kind).expect("cycle is closed"));
                }
            } else if path.len() < range.1 {
                dfs(path, kind, inside, range, limit, out);
            }
            path.pop();
        }
    }

    for s in rectangle(0, w - 1, 0, h - 1) {
        let mut path = vec![s];
        dfs(&mut path, kind, &inside, (min_len, max_len), limit, &mut out);
        if out.len() >= limit {
            break;
        }
    }
    out
}

/// A random lattice octagon `Z² ∩ {x0<=x<=x1, y0<=y<=y1, a<=x+y<=b,
/// c<=x-y<=d}` inside `frame`, together with the frame.
pub fn random_octagon(rng: &mut ChaCha8Rng, frame: (i64, i64, i64, i64)) -> Set {
    let (fx0, fx1, fy0, fy1) = frame;
    let x0 = rng.gen_range(fx0..=fx1);
    let x1 = rng.gen_range(x0..=fx1);
    let y0 = rng.gen_range(fy0..=fy1);
    let y1 = rng.gen_range(y0..=fy1);
    let cut = |rng: &mut ChaCha8Rng| rng.gen_range(0..=3);
    let (a, b) = (x0 + y0 + cut(rng), x1 + y1 - cut(rng));
    let (c, d) = (x0 - y1 + cut(rng), x1 - y0 - cut(rng));
    rectangle(x0, x1, y0, y1)
        .into_iter()
        .filter(|q| (a..=b).contains(&(q.x + q.y)) && (c..=d).contains(&(q.x - q.y)))
        .collect()
}

/// A random rectangle with sides between 1 and `max_side` points, placed
/// with its lower-left corner at the origin.
pub fn random_frame(rng: &mut ChaCha8Rng, max_side: i64) -> (i64, i64, i64, i64) {
    let w = rng.gen_range(1..=max_side);
    let h = rng.gen_range(1..=max_side);
    (0, w - 1, 0, h - 1)
}

/// Apply one of the eight symmetries of the square lattice, then translate.
pub fn transform(s: &Set, sym: u8, dx: i64, dy: i64) -> Set {
    s.iter()
        .map(|q| {
            let (x, y) = match sym % 8 {
                0 => (q.x, q.y),
                1 => (-q.y, q.x),
                2 => (-q.x, -q.y),
                3 => (q.y, -q.x),
                4 => (-q.x, q.y),
                5 => (q.x, -q.y),
                6 => (q.y, q.x),
                _ => (-q.y, -q.x),
            };
            p(x + dx, y + dy)
        })
        .collect()
}
