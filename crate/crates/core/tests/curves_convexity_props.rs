use digitop_core::convexity::{convex_hull, is_digitally_convex, is_hull_saturated, maximal_segments, Convexity};
use digitop_core::curves::{
    canonical_bounding_curves, disk_split, is_bounding_curve_set, is_closed_curve, is_simple_closed_curve,
    jordan_components, trace_bounding_curve,
};
use digitop_core::lattice::rectangle;
use digitop_core::{AdjacencyKind, PointSet};
use digitop_testkit as tk;
use proptest::prelude::*;

fn octagon() -> impl Strategy<Value = PointSet<i64>> {
    any::<u64>().prop_map(|seed| {
        let mut rng = tk::rng(seed);
        let frame = tk::random_frame(&mut rng, 9);
        tk::random_octagon(&mut rng, frame)
    })
}

proptest! {
    #[test]
    fn traced_curves_bound_their_disks(x in octagon()) {
        prop_assume!(!x.is_empty());
        if let Ok(curve) = trace_bounding_curve(&x) {
            prop_assert!(is_closed_curve(curve.points(), AdjacencyKind::C2));
            prop_assert!(curve.points().iter().all(|q| x.contains(q)));
            prop_assert_eq!(curve.points()[0], *x.first().unwrap());
            if let Some(split) = disk_split(&curve.point_set()) {
                let mut disk = split.interior.clone();
                disk.extend(curve.points().iter().copied());
                prop_assert_eq!(&disk, &x);
            }
        }
    }

    #[test]
    fn convexity_is_invariant_under_lattice_symmetries(x in octagon(), sym in 0u8..8, dx in -5i64..5, dy in -5i64..5) {
        prop_assume!(!x.is_empty());
        let moved = tk::transform(&x, sym, dx, dy);
        let a = is_digitally_convex(&x).unwrap();
        let b = is_digitally_convex(&moved).unwrap();
        prop_assert_eq!(a.case_name(), b.case_name());
    }

    #[test]
    fn accepted_disks_are_hull_saturated(x in octagon()) {
        prop_assume!(!x.is_empty());
        if let Convexity::Disk { hull, segments, curve } = is_digitally_convex(&x).unwrap() {
            prop_assert!(is_hull_saturated(&x).unwrap());
            let pts: Vec<_> = x.iter().copied().collect();
            let (x0, x1) = (pts.iter().map(|q| q.x).min().unwrap(), pts.iter().map(|q| q.x).max().unwrap());
            let (y0, y1) = (pts.iter().map(|q| q.y).min().unwrap(), pts.iter().map(|q| q.y).max().unwrap());
            for q in rectangle(x0, x1, y0, y1) {
                prop_assert_eq!(tk::in_hull(&pts, q), x.contains(&q), "at {}", q);
            }
            // Hull edges follow the four segment directions.
            for (a, b) in hull.edges() {
                let (ex, ey) = ((b.x - a.x).abs(), (b.y - a.y).abs());
                prop_assert!(ex == 0 || ey == 0 || ex == ey, "edge {} {}", a, b);
            }
            prop_assert_eq!(segments, maximal_segments(&curve));
            let canon = canonical_bounding_curves(&x).unwrap();
            prop_assert!(is_bounding_curve_set(&x, &canon));
        }
    }

    #[test]
    fn hull_contains_every_point(x in octagon()) {
        prop_assume!(!x.is_empty());
        let hull = convex_hull(&x).unwrap();
        prop_assert!(x.iter().all(|q| hull.contains(q)));
        let verts: Vec<_> = hull.vertices.clone();
        for v in &verts {
            prop_assert!(x.contains(v));
        }
    }

    #[test]
    fn generated_curves_satisfy_jordan(seed in 0usize..400) {
        let c1 = tk::induced_cycles(AdjacencyKind::C1, 6, 6, 8, 14, 60);
        let c2 = tk::induced_cycles(AdjacencyKind::C2, 5, 5, 4, 10, 60);
        let all: Vec<_> = c1.into_iter().chain(c2).collect();
        let curve = &all[seed % all.len()];
        prop_assert!(is_simple_closed_curve(curve));
        let part = jordan_components(curve).unwrap();
        prop_assert!(!part.interior.is_empty());
        prop_assert_eq!(tk::complement_counts(&curve.point_set(), curve.kind().dual()), (1, 1));
        for variant in [curve.reversed(), curve.rotated(seed)] {
            prop_assert_eq!(&jordan_components(&variant).unwrap().interior, &part.interior);
        }
    }
}

#[test]
fn non_simple_curves_are_rejected_by_jordan() {
    // The 3×3 ring under c2 has chords at the corners.
    let ring: PointSet<i64> = rectangle(0, 2, 0, 2).into_iter().filter(|q| *q != tk::p(1, 1)).collect();
    let curve = trace_bounding_curve(&ring).unwrap();
    assert!(!is_simple_closed_curve(&curve));
    assert!(jordan_components(&curve).is_err());
}
