use std::fmt::Write;

use crate::lozenge::cell::{point6, Cell, LozengeKind};
use crate::lozenge::region::Region;
use crate::lozenge::tiler::Tile;

/// Length of a lattice edge in SVG user units.
const UNIT: f64 = 24.0;
const MARGIN: f64 = 12.0;

struct Frame {
    min_x: i64,
    max_y: i64,
}

impl Frame {
    fn point(&self, (x, y): (i64, i64)) -> (f64, f64) {
        let sx = UNIT * 3f64.sqrt() / 2.0 / 6.0;
        let sy = UNIT / 6.0;
        (MARGIN + (x - self.min_x) as f64 * sx, MARGIN + (self.max_y - y) as f64 * sy)
    }

    fn lattice(&self, p: (i64, i64)) -> (f64, f64) {
        self.point(point6(p))
    }
}

fn polygon(out: &mut String, frame: &Frame, corners: &[(i64, i64)], style: &str) {
    let pts: Vec<String> = corners
        .iter()
        .map(|&p| {
            let (x, y) = frame.lattice(p);
            format!("{x:.2},{y:.2}")
        })
        .collect();
    let _ = writeln!(out, r#"  <polygon points="{}" {style}/>"#, pts.join(" "));
}

fn shared_edge(a: Cell, b: Cell) -> Vec<(i64, i64)> {
    a.corners().into_iter().filter(|p| b.corners().contains(p)).collect()
}

/// Corners of the lozenge `a + b` in drawing order.
fn lozenge_corners(a: Cell, b: Cell) -> [(i64, i64); 4] {
    let shared = shared_edge(a, b);
    let far = |c: Cell| c.corners().into_iter().find(|p| !shared.contains(p)).unwrap();
    [far(a), shared[0], far(b), shared[1]]
}

fn fill(kind: Option<LozengeKind>) -> &'static str {
    match kind {
        Some(LozengeKind::Horizontal) => "#e9c46a",
        Some(LozengeKind::Rising) => "#8ab6d6",
        Some(LozengeKind::Falling) => "#a7d58f",
        None => "#dddddd",
    }
}

/// Static SVG of a region: cell grid, solid outer boundary, dashed free edges
/// and shaded ellipses on lozenges with non-unit weight. With a tiling, its
/// lozenges are drawn on top, coloured by orientation.
pub fn render_svg(region: &Region, tiling: Option<&[Tile]>) -> String {
    let mut points: Vec<(i64, i64)> = region.cells().iter().flat_map(|c| c.corners().map(point6)).collect();
    points.extend(region.free_edges().flat_map(|(_, out)| out.corners().map(point6)));
    let (min_x, max_x) = points.iter().fold((i64::MAX, i64::MIN), |(a, b), p| (a.min(p.0), b.max(p.0)));
    let (min_y, max_y) = points.iter().fold((i64::MAX, i64::MIN), |(a, b), p| (a.min(p.1), b.max(p.1)));
    let frame = Frame { min_x, max_y };
    let (width, height) = if points.is_empty() {
        (2.0 * MARGIN, 2.0 * MARGIN)
    } else {
        let (x, _) = frame.point((max_x, 0));
        let (_, y) = frame.point((0, min_y));
        (x + MARGIN, y + MARGIN)
    };

    let mut out = String::new();
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{width:.2}" height="{height:.2}" viewBox="0 0 {width:.2} {height:.2}">"#
    );
    for c in region.cells() {
        polygon(&mut out, &frame, &c.corners(), r##"fill="#f5f5f5" stroke="#c8c8c8" stroke-width="0.5""##);
    }
    if let Some(tiles) = tiling {
        for &t in tiles {
            match t {
                Tile::Lozenge(a, b) => {
                    let style = format!(r#"fill="{}" stroke="black" stroke-width="1""#, fill(a.lozenge_kind(b)));
                    polygon(&mut out, &frame, &lozenge_corners(a, b), &style);
                }
                Tile::Half { inside, outside } => {
                    let style =
                        format!(r#"fill="{}" stroke="black" stroke-width="1""#, fill(inside.lozenge_kind(outside)));
                    polygon(&mut out, &frame, &inside.corners(), &style);
                }
            }
        }
    }
    for c in region.cells() {
        for nb in c.neighbors() {
            if region.contains(nb) || region.is_free_edge(*c, nb) {
                continue;
            }
            let e = shared_edge(*c, nb);
            line(&mut out, &frame, e[0], e[1], r#"stroke="black" stroke-width="1.5""#);
        }
    }
    for (inside, outside) in region.free_edges() {
        let e = shared_edge(inside, outside);
        line(&mut out, &frame, e[0], e[1], r##"stroke="#c0392b" stroke-width="2" stroke-dasharray="4 3""##);
    }
    for ((a, b), _) in region.weights() {
        let (ax, ay) = frame.point(a.centroid6());
        let (bx, by) = frame.point(b.centroid6());
        let _ = writeln!(
            out,
            r##"  <ellipse cx="{:.2}" cy="{:.2}" rx="{:.2}" ry="{:.2}" fill="#555555" fill-opacity="0.45"/>"##,
            (ax + bx) / 2.0,
            (ay + by) / 2.0,
            UNIT * 0.3,
            UNIT * 0.18
        );
    }
    out.push_str("</svg>\n");
    out
}

fn line(out: &mut String, frame: &Frame, p: (i64, i64), q: (i64, i64), style: &str) {
    let (x1, y1) = frame.lattice(p);
    let (x2, y2) = frame.lattice(q);
    let _ = writeln!(out, r#"  <line x1="{x1:.2}" y1="{y1:.2}" x2="{x2:.2}" y2="{y2:.2}" {style}/>"#);
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::budget::Budget;
    use crate::lozenge::build::{build_a, build_a_tilde};
    use crate::lozenge::tiler::Tiler;
    use crate::partitions::StrictPartition;
    use rand::SeedableRng;

    #[test]
    fn empty_region_is_valid_svg() {
        let svg = render_svg(&Region::default(), None);
        assert!(svg.starts_with("<svg") && svg.trim_end().ends_with("</svg>"));
    }

    #[test]
    fn figure_elements() {
        let shape = StrictPartition::new(vec![9, 8, 7, 4, 3, 1]).unwrap();
        let a = build_a(6, &shape, &[2, 4]).unwrap();
        let svg = render_svg(&a, None);
        assert_eq!(svg.matches("stroke-dasharray").count(), a.free_edges().count());
        assert_eq!(svg.matches("<polygon").count(), a.len());
        let full = build_a_tilde(6, &shape, &[2, 4]).unwrap();
        assert_eq!(render_svg(&full, None).matches("<ellipse").count(), 4);
    }

    #[test]
    fn sampled_tiling_is_drawn_once_per_tile() {
        let shape = StrictPartition::new(vec![3, 1]).unwrap();
        let a = build_a(2, &shape, &[]).unwrap();
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(1);
        let tiles = Tiler::new(&a).unwrap().sample(&mut rng, &Budget::new("t", 1_000_000)).unwrap().unwrap();
        let svg = render_svg(&a, Some(&tiles));
        assert_eq!(svg.matches("<polygon").count(), a.len() + tiles.len());
        assert_eq!(svg, render_svg(&a, Some(&tiles)));
    }
}
