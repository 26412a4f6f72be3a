//! Named point sets used by the command-line `examples` command and the
//! test suites.

use crate::lattice::{rectangle, Point, PointSet};
use crate::scalar::Coord;

fn c<C: Coord>(v: i64) -> C {
    C::from(v).expect("fixture coordinates are small")
}

/// `{(x, y) : |x| + |y| <= r}`.
pub fn diamond<C: Coord>(r: i64) -> PointSet<C> {
    rectangle(c(-r), c(r), c(-r), c(r))
        .into_iter()
        .filter(|p: &Point<C>| p.x.abs() + p.y.abs() <= c(r))
        .collect()
}

/// `{(x, y) : |x| + |y| = r}`.
pub fn diamond_ring<C: Coord>(r: i64) -> PointSet<C> {
    diamond(r).into_iter().filter(|p: &Point<C>| p.x.abs() + p.y.abs() == c(r)).collect()
}

/// A convex disk (octagon with sides of slope 0, ±1 and ∞) whose leftmost
/// column spans `y ∈ [2, 4]` and rightmost column `y ∈ [3, 6]`.
pub fn octagon_disk<C: Coord>() -> PointSet<C> {
    rectangle(c(0), c(6), c(0), c(7))
        .into_iter()
        .filter(|p: &Point<C>| {
            let (x, y) = (p.x, p.y);
            x + y >= c(2) && y <= x + c(4) && y >= x - c(3) && x + y <= c(12)
        })
        .collect()
}

/// The rectangle the `octagon_disk` is retracted from.
pub fn octagon_frame<C: Coord>() -> PointSet<C> {
    rectangle(c(-2), c(8), c(-1), c(9))
}

/// `[-3, 3]² \ {|x| + |y| <= 1}`.
pub fn holed_square<C: Coord>() -> PointSet<C> {
    rectangle(c(-3), c(3), c(-3), c(3)).difference(&diamond(1)).copied().collect()
}

/// `[0, 2]² ∪ {(3, 1)}`.
pub fn clipped_square<C: Coord>() -> PointSet<C> {
    let mut s = rectangle(c(0), c(2), c(0), c(2));
    s.insert(Point::new(c(3), c(1)));
    s
}
