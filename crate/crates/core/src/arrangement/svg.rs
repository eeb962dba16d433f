//! SVG rendering of an arrangement: half-lines solid, segment interiors
//! dashed, input points as filled circles and face representatives as dots.

use std::fmt::Write;

use crate::arrangement::{Arrangement, EdgeKind};
use crate::pointset::{Color, ColoredPointSet};

const SIZE: f64 = 800.0;
const MARGIN: f64 = 20.0;

pub fn render(arr: &Arrangement, kinds: &[EdgeKind], set: &ColoredPointSet) -> String {
    let b = arr.bbox();
    let (x0, y0) = (to_f64(&b.xmin), to_f64(&b.ymin));
    let (x1, y1) = (to_f64(&b.xmax), to_f64(&b.ymax));
    let scale = (SIZE - 2.0 * MARGIN) / (x1 - x0).max(y1 - y0);
    let map = |p: (f64, f64)| (MARGIN + (p.0 - x0) * scale, SIZE - MARGIN - (p.1 - y0) * scale);

    let mut out = String::new();
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{SIZE}" height="{SIZE}" viewBox="0 0 {SIZE} {SIZE}">"#
    );
    let _ = writeln!(out, r#"<rect width="100%" height="100%" fill="white"/>"#);
    for (e, edge) in arr.edges().iter().enumerate() {
        let (ax, ay) = map(arr.vertices()[edge.ends.0].position.to_f64());
        let (bx, by) = map(arr.vertices()[edge.ends.1].position.to_f64());
        let style = match kinds[e] {
            EdgeKind::HalfLine => r##"stroke="#222" stroke-width="1.2""##,
            EdgeKind::SegmentInterior => r##"stroke="#888" stroke-width="1" stroke-dasharray="4 3""##,
            EdgeKind::BoxBoundary => r##"stroke="#ccc" stroke-width="1""##,
        };
        let _ = writeln!(
            out,
            r#"<line x1="{ax:.3}" y1="{ay:.3}" x2="{bx:.3}" y2="{by:.3}" {style}/>"#
        );
    }
    for f in arr.inner_faces() {
        if let Some(rep) = &arr.faces()[f].representative {
            let (x, y) = map(rep.to_f64());
            let _ = writeln!(out, r##"<circle cx="{x:.3}" cy="{y:.3}" r="1.5" fill="#2a7"/>"##);
        }
    }
    for (i, p) in set.points().iter().enumerate() {
        let (x, y) = map(p.to_f64());
        let fill = match set.colors().map(|c| c[i]) {
            Some(Color::Red) => "#d22",
            Some(Color::Blue) => "#22d",
            None => "#000",
        };
        let _ = writeln!(out, r#"<circle cx="{x:.3}" cy="{y:.3}" r="4" fill="{fill}"/>"#);
    }
    out.push_str("</svg>\n");
    out
}

fn to_f64(r: &crate::kernel::Rational) -> f64 {
    use num_traits::ToPrimitive;
    r.to_f64().unwrap_or(0.0)
}
