//! SVG drawing of regions and tilings. Unit triangles have a fixed edge of
//! 20 px; north is up, as in the usual pictures of these regions.

use std::fmt::Write;

use lozenge_core::lattice::{Lozenge, LozengeKind, Region, TriangleCell};
use lozenge_core::oracle::TilingWitness;
use lozenge_core::ExactCount;

const EDGE: f64 = 20.0;
const MARGIN: f64 = 10.0;

type Pt = (i32, i32);

/// Corners as (half-unit column, line).
fn corners(c: TriangleCell) -> [Pt; 3] {
    let (r, k) = (c.row(), c.col());
    if c.is_up() {
        [(k, r), (k + 1, r + 1), (k - 1, r + 1)]
    } else {
        [(k - 1, r), (k + 1, r), (k, r + 1)]
    }
}

/// Each edge with the cell on its other side.
fn edges(c: TriangleCell) -> [(Pt, Pt, TriangleCell); 3] {
    let [p, q, s] = corners(c);
    let (r, k) = (c.row(), c.col());
    if c.is_up() {
        [
            (p, q, TriangleCell::new(r, k + 1)),
            (q, s, TriangleCell::new(r + 1, k)),
            (s, p, TriangleCell::new(r, k - 1)),
        ]
    } else {
        [
            (p, q, TriangleCell::new(r - 1, k)),
            (q, s, TriangleCell::new(r, k + 1)),
            (s, p, TriangleCell::new(r, k - 1)),
        ]
    }
}

fn lozenge_corners(l: Lozenge) -> [Pt; 4] {
    let up = corners(l.up());
    let down = corners(l.down());
    let extra = *down.iter().find(|p| !up.contains(p)).expect("cells share one edge");
    // Insert the far corner of the down cell between the shared corners.
    let shared: Vec<usize> = (0..3).filter(|&i| down.contains(&up[i])).collect();
    let (i, j) = (shared[0], shared[1]);
    let mut pts = up.to_vec();
    if (i, j) == (0, 2) {
        pts.push(extra);
    } else {
        pts.insert(j, extra);
    }
    [pts[0], pts[1], pts[2], pts[3]]
}

struct Frame {
    min_x: i32,
    min_y: i32,
}

impl Frame {
    fn px(&self, (x2, line): Pt) -> (f64, f64) {
        (
            MARGIN + (x2 - self.min_x) as f64 * EDGE / 2.0,
            MARGIN + (line - self.min_y) as f64 * EDGE * 3f64.sqrt() / 2.0,
        )
    }

    fn points(&self, pts: &[Pt]) -> String {
        pts.iter()
            .map(|&p| {
                let (x, y) = self.px(p);
                format!("{x:.2},{y:.2}")
            })
            .collect::<Vec<_>>()
            .join(" ")
    }
}

fn fill(kind: LozengeKind) -> &'static str {
    match kind {
        LozengeKind::Vertical => "#e9c46a",
        LozengeKind::LeanRight => "#8ab6d6",
        LozengeKind::LeanLeft => "#a7c957",
    }
}

pub fn render(region: &Region, tiling: Option<&TilingWitness>) -> String {
    let all: Vec<Pt> = region.cells().iter().flat_map(|&c| corners(c)).collect();
    let (min_x, max_x) = (
        all.iter().map(|p| p.0).min().unwrap_or(0),
        all.iter().map(|p| p.0).max().unwrap_or(0),
    );
    let (min_y, max_y) = (
        all.iter().map(|p| p.1).min().unwrap_or(0),
        all.iter().map(|p| p.1).max().unwrap_or(0),
    );
    let frame = Frame { min_x, min_y };
    let (w, h) = frame.px((max_x, max_y));
    let mut s = String::new();
    writeln!(s, r##"<?xml version="1.0" encoding="UTF-8"?>"##).unwrap();
    writeln!(
        s,
        r##"<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{:.0}" height="{:.0}">"##,
        w + MARGIN,
        h + MARGIN
    )
    .unwrap();
    writeln!(s, r##"<g class="cells" fill="#f6f6f6" stroke="#c8c8c8" stroke-width="0.5">"##).unwrap();
    for &c in region.cells() {
        writeln!(s, r##"<polygon points="{}"/>"##, frame.points(&corners(c))).unwrap();
    }
    writeln!(s, "</g>").unwrap();

    if let Some(t) = tiling {
        writeln!(s, r##"<g class="tiling" stroke="#333" stroke-width="1">"##).unwrap();
        for &l in &t.lozenges {
            writeln!(
                s,
                r##"<polygon points="{}" fill="{}"/>"##,
                frame.points(&lozenge_corners(l)),
                fill(l.kind())
            )
            .unwrap();
        }
        writeln!(s, "</g>").unwrap();
    }

    let weighted: Vec<_> = region.weights().iter().filter(|(_, w)| **w != ExactCount::one()).collect();
    if !weighted.is_empty() {
        writeln!(s, r##"<g class="weighted" fill="#555" fill-opacity="0.45" stroke="none">"##).unwrap();
        for (l, w) in weighted {
            writeln!(
                s,
                r##"<polygon points="{}"><title>weight {w}</title></polygon>"##,
                frame.points(&lozenge_corners(*l))
            )
            .unwrap();
        }
        writeln!(s, "</g>").unwrap();
    }

    writeln!(s, r##"<g class="boundary" stroke="#000" stroke-width="1.5" stroke-linecap="round">"##).unwrap();
    for &c in region.cells() {
        for (p, q, other) in edges(c) {
            if !region.contains(other) {
                let ((x1, y1), (x2, y2)) = (frame.px(p), frame.px(q));
                writeln!(s, r##"<line x1="{x1:.2}" y1="{y1:.2}" x2="{x2:.2}" y2="{y2:.2}"/>"##).unwrap();
            }
        }
    }
    writeln!(s, "</g>").unwrap();
    s.push_str("</svg>\n");
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn lozenge_outline_is_a_quadrilateral() {
        let up = TriangleCell::new(0, 0);
        for down in up.adjacency() {
            let l = Lozenge::new(up, down).unwrap();
            let pts = lozenge_corners(l);
            let mut uniq = pts.to_vec();
            uniq.sort();
            uniq.dedup();
            assert_eq!(uniq.len(), 4);
            // Consecutive corners are one unit apart.
            for i in 0..4 {
                let (a, b) = (pts[i], pts[(i + 1) % 4]);
                let d = ((a.0 - b.0).abs(), (a.1 - b.1).abs());
                assert!(d == (2, 0) || d == (1, 1), "{pts:?}");
            }
        }
    }

    #[test]
    fn edges_point_at_neighbours() {
        for c in [TriangleCell::new(0, 0), TriangleCell::new(0, 1)] {
            let mut ns: Vec<_> = edges(c).iter().map(|e| e.2).collect();
            let mut adj = c.adjacency().to_vec();
            ns.sort();
            adj.sort();
            assert_eq!(ns, adj);
        }
    }
}
