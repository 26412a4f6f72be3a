//! Text formats and SVG rendering.
//!
//! Grid documents look like
//!
//! ```text
//! offset -1 -1
//! ..
//! .#
//! ```
//!
//! The header gives the coordinate of the bottom-left cell; rows are listed
//! top row first, `#` marks a point and `.` an empty cell. Maps use one
//! `x y -> x' y'` line per entry; point lists (curves) one `x y` line per
//! point, in order.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use crate::convexity::Hull;
use crate::curves::Curve;
use crate::error::{Error, Result};
use crate::lattice::{BoundingBox, Point, PointSet};
use crate::maps::PointMap;
use crate::scalar::Coord;

fn parse_err(line: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        line,
        message: message.into(),
    }
}

fn parse_coord<C: Coord>(tok: &str, line: usize) -> Result<C> {
    tok.parse::<C>()
        .map_err(|_| parse_err(line, format!("'{tok}' is not an integer coordinate")))
}

/// Decode a grid document.
pub fn parse_image<C: Coord>(text: &str) -> Result<PointSet<C>> {
    let mut lines = text.lines().enumerate().map(|(i, l)| (i + 1, l.strip_suffix('\r').unwrap_or(l)));
    let (hline, header) = lines
        .next()
        .ok_or_else(|| parse_err(1, "missing 'offset X0 Y0' header"))?;
    let toks: Vec<&str> = header.split_whitespace().collect();
    let [kw, x0, y0] = toks.as_slice() else {
        return Err(parse_err(hline, "expected header 'offset X0 Y0'"));
    };
    if *kw != "offset" {
        return Err(parse_err(hline, "expected header 'offset X0 Y0'"));
    }
    let (x0, y0): (C, C) = (parse_coord(x0, hline)?, parse_coord(y0, hline)?);

    let mut rows: Vec<(usize, &str)> = lines.collect();
    while rows.last().is_some_and(|(_, r)| r.trim().is_empty()) {
        rows.pop();
    }
    let width = rows.first().map_or(0, |(_, r)| r.chars().count());
    let height = rows.len();
    let mut out = PointSet::new();
    for (row_index, &(lineno, row)) in rows.iter().enumerate() {
        if row.chars().count() != width {
            return Err(parse_err(
                lineno,
                format!("ragged row: {} cells, expected {width}", row.chars().count()),
            ));
        }
        let y = y0 + C::from_usize(height - 1 - row_index);
        for (col, ch) in row.chars().enumerate() {
            match ch {
                '#' => {
                    out.insert(Point::new(x0 + C::from_usize(col), y));
                }
                '.' => {}
                other => return Err(parse_err(lineno, format!("illegal character '{other}' in column {}", col + 1))),
            }
        }
    }
    Ok(out)
}

/// Encode a point set as a grid document over its bounding box.
pub fn format_image<C: Coord>(set: &PointSet<C>) -> String {
    let Some(bb) = BoundingBox::of(set) else {
        return "offset 0 0\n".into();
    };
    let mut out = format!("offset {} {}\n", bb.min.x, bb.min.y);
    for row in 0..bb.height() {
        let y = bb.max.y - C::from_usize(row);
        for col in 0..bb.width() {
            let x = bb.min.x + C::from_usize(col);
            out.push(if set.contains(&Point::new(x, y)) { '#' } else { '.' });
        }
        out.push('\n');
    }
    out
}

fn parse_pair<C: Coord>(s: &str, line: usize) -> Result<Point<C>> {
    let toks: Vec<&str> = s.split_whitespace().collect();
    match toks.as_slice() {
        [x, y] => Ok(Point::new(parse_coord(x, line)?, parse_coord(y, line)?)),
        _ => Err(parse_err(line, format!("expected 'x y', got '{}'", s.trim()))),
    }
}

fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'))
}

/// One `x y -> x' y'` line per entry, in domain order.
pub fn format_map_table<C: Coord>(f: &PointMap<C>) -> String {
    let mut out = String::new();
    for (p, q) in f.table() {
        let _ = writeln!(out, "{} {} -> {} {}", p.x, p.y, q.x, q.y);
    }
    out
}

/// Parse `x y -> x' y'` lines. Blank lines and `#` comments are skipped.
pub fn parse_map_table<C: Coord>(text: &str) -> Result<BTreeMap<Point<C>, Point<C>>> {
    let mut table = BTreeMap::new();
    for (line, l) in content_lines(text) {
        let (lhs, rhs) = l
            .split_once("->")
            .ok_or_else(|| parse_err(line, "expected 'x y -> x' y''"))?;
        let from = parse_pair(lhs, line)?;
        if table.insert(from, parse_pair(rhs, line)?).is_some() {
            return Err(parse_err(line, format!("duplicate entry for {from}")));
        }
    }
    Ok(table)
}

/// One `x y` line per point, in order.
pub fn format_point_list<C: Coord>(points: &[Point<C>]) -> String {
    let mut out = String::new();
    for p in points {
        let _ = writeln!(out, "{} {}", p.x, p.y);
    }
    out
}

pub fn parse_point_list<C: Coord>(text: &str) -> Result<Vec<Point<C>>> {
    content_lines(text).map(|(line, l)| parse_pair(l, line)).collect()
}

/// Optional layers drawn over the point squares.
#[derive(Clone, Copy, Debug)]
pub struct Overlays<'a, C: Coord> {
    pub arrows: Option<&'a PointMap<C>>,
    pub curves: &'a [Curve<C>],
    pub hull: Option<&'a Hull<C>>,
}

impl<C: Coord> Default for Overlays<'_, C> {
    fn default() -> Self {
        Overlays {
            arrows: None,
            curves: &[],
            hull: None,
        }
    }
}

const CELL: i64 = 24;

/// Deterministic SVG drawing: a unit square per point, highlighted curve
/// points joined in order, the hull outline, and an arrow `p → f(p)` for
/// every non-fixed entry of a map.
pub fn render_svg<C: Coord>(set: &PointSet<C>, overlays: Overlays<'_, C>) -> Result<String> {
    if set.is_empty() {
        return Err(Error::Empty);
    }
    let mut extent: Vec<Point<C>> = set.iter().copied().collect();
    if let Some(f) = overlays.arrows {
        extent.extend(f.table().iter().flat_map(|(p, q)| [*p, *q]));
    }
    if let Some(h) = overlays.hull {
        extent.extend(h.vertices.iter().copied());
    }
    for c in overlays.curves {
        extent.extend(c.points().iter().copied());
    }
    let bb = BoundingBox::of(extent.iter()).expect("nonempty").padded(C::one());
    let ox = bb.min.x.wide() as i64;
    let oy = bb.max.y.wide() as i64;
    let corner = |p: &Point<C>| ((p.x.wide() as i64 - ox) * CELL, (oy - p.y.wide() as i64) * CELL);
    let center = |p: &Point<C>| {
        let (x, y) = corner(p);
        (x + CELL / 2, y + CELL / 2)
    };
    let (w, h) = (bb.width() as i64 * CELL, bb.height() as i64 * CELL);

    let mut s = String::new();
    let _ = writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{w}" height="{h}" viewBox="0 0 {w} {h}">"#
    );
    s.push_str(concat!(
        "<defs><marker id=\"head\" markerWidth=\"8\" markerHeight=\"8\" refX=\"7\" refY=\"4\" orient=\"auto\">",
        "<path d=\"M0,0 L8,4 L0,8 z\" fill=\"#c0392b\"/></marker></defs>\n"
    ));
    let _ = writeln!(s, r##"<rect x="0" y="0" width="{w}" height="{h}" fill="#ffffff"/>"##);

    s.push_str("<g id=\"points\" fill=\"#d5d8dc\" stroke=\"#566573\" stroke-width=\"1\">\n");
    for p in set {
        let (x, y) = corner(p);
        let _ = writeln!(s, r#"<rect x="{x}" y="{y}" width="{CELL}" height="{CELL}"/>"#);
    }
    s.push_str("</g>\n");

    if let Some(hull) = overlays.hull {
        let pts: Vec<String> = hull
            .vertices
            .iter()
            .map(|p| {
                let (x, y) = center(p);
                format!("{x},{y}")
            })
            .collect();
        let _ = writeln!(
            s,
            r##"<polygon id="hull" points="{}" fill="none" stroke="#1f618d" stroke-width="2" stroke-dasharray="6,4"/>"##,
            pts.join(" ")
        );
    }

    for (i, curve) in overlays.curves.iter().enumerate() {
        let _ = writeln!(s, r##"<g id="curve{}" fill="#f5b041" stroke="#935116">"##, i + 1);
        for p in curve.points() {
            let (x, y) = corner(p);
            let _ = writeln!(s, r#"<rect x="{}" y="{}" width="{}" height="{}"/>"#, x + 3, y + 3, CELL - 6, CELL - 6);
        }
        let pts: Vec<String> = curve
            .points()
            .iter()
            .map(|p| {
                let (x, y) = center(p);
                format!("{x},{y}")
            })
            .collect();
        let _ = writeln!(s, r#"<polygon points="{}" fill="none" stroke-width="2"/>"#, pts.join(" "));
        s.push_str("</g>\n");
    }

    if let Some(f) = overlays.arrows {
        s.push_str("<g id=\"arrows\" stroke=\"#c0392b\" stroke-width=\"1.5\" marker-end=\"url(#head)\">\n");
        for (p, q) in f.table().iter().filter(|(p, q)| p != q) {
            let (x1, y1) = center(p);
            let (x2, y2) = center(q);
            let _ = writeln!(s, r#"<line x1="{x1}" y1="{y1}" x2="{x2}" y2="{y2}"/>"#);
        }
        s.push_str("</g>\n");
    }
    s.push_str("</svg>\n");
    Ok(s)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::{rectangle, AdjacencyKind, DigitalImage};

    fn p(x: i64, y: i64) -> Point<i64> {
        Point::new(x, y)
    }

    #[test]
    fn parse_examples() {
        let a: PointSet<i64> = parse_image("offset 0 0\n##\n").unwrap();
        assert_eq!(a, [p(0, 0), p(1, 0)].into_iter().collect());
        let b: PointSet<i64> = parse_image("offset -1 -1\n..\n.#\n").unwrap();
        assert_eq!(b, [p(0, -1)].into_iter().collect());
        let rows: PointSet<i64> = parse_image("offset 0 0\n#.\n.#").unwrap();
        assert_eq!(rows, [p(0, 1), p(1, 0)].into_iter().collect());
    }

    #[test]
    fn parse_errors_carry_line_numbers() {
        assert_eq!(
            parse_image::<i64>("offset 0 0\n#x\n"),
            Err(Error::Parse {
                line: 2,
                message: "illegal character 'x' in column 2".into()
            })
        );
        assert!(matches!(parse_image::<i64>("offset 0 0\n##\n#\n"), Err(Error::Parse { line: 3, .. })));
        assert!(matches!(parse_image::<i64>("##\n"), Err(Error::Parse { line: 1, .. })));
        assert!(matches!(parse_image::<i64>(""), Err(Error::Parse { line: 1, .. })));
        assert!(matches!(parse_image::<i64>("offset a 0\n#\n"), Err(Error::Parse { line: 1, .. })));
    }

    #[test]
    fn grid_format_is_exact() {
        let set: PointSet<i64> = [p(-1, 2), p(0, 0), p(1, 1)].into_iter().collect();
        assert_eq!(format_image(&set), "offset -1 0\n#..\n..#\n.#.\n");
        assert_eq!(parse_image::<i64>(&format_image(&set)).unwrap(), set);
    }

    #[test]
    fn map_table_round_trip() {
        let x = DigitalImage::new(rectangle(0, 2, 0, 0), AdjacencyKind::C1);
        let f = PointMap::from_fn(x.clone(), x, |q| p(2 - q.x, 0)).unwrap();
        let text = format_map_table(&f);
        assert_eq!(text, "0 0 -> 2 0\n1 0 -> 1 0\n2 0 -> 0 0\n");
        assert_eq!(&parse_map_table::<i64>(&text).unwrap(), f.table());
        assert!(parse_map_table::<i64>("0 0 -> 1\n").is_err());
        assert!(parse_map_table::<i64>("0 0 -> 1 1\n0 0 -> 2 2\n").is_err());
    }

    #[test]
    fn point_list_round_trip() {
        let pts = vec![p(0, 0), p(1, 1), p(2, 0)];
        assert_eq!(parse_point_list::<i64>(&format_point_list(&pts)).unwrap(), pts);
    }

    #[test]
    fn svg_single_point() {
        let set: PointSet<i64> = [p(0, 0)].into_iter().collect();
        let svg = render_svg(&set, Overlays::default()).unwrap();
        assert_eq!(svg.matches("<rect x=").count(), 2); // background + point
        assert!(svg.contains(r#"<rect x="24" y="24" width="24" height="24"/>"#));
        assert!(render_svg(&PointSet::<i64>::new(), Overlays::default()).is_err());
    }
}
