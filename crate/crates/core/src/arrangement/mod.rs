//! The arrangement of all spanned lines, clipped to a bounding box, as a
//! half-edge structure, plus the order partition derived from it.
//!
//! Vertex identity is combinatorial: under strong general position two
//! spanned lines with disjoint endpoints meet at a point outside the set,
//! two lines sharing an endpoint meet exactly there, and no third line
//! passes through either kind of point. The box strictly contains every
//! vertex, so each face of the unclipped arrangement meets it in exactly
//! one face of the clipped subdivision.

mod partition;
mod stats;
pub mod svg;

pub use partition::{build_order_partition, classify_edges, EdgeKind, OrderPartition};
pub use stats::{
    binomial, compute_stats, count_convex_quadrilaterals, count_segment_vertices,
    interior_face_representatives, ArrangementStats,
};

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::hom::{self, ccw_angle_cmp, crossing_param, HLine, HPoint, Param, Vector};
use crate::kernel::{rat, Rational, RationalPoint};
use crate::pointset::{validate_homogeneous, ColoredPointSet};

pub type VertexId = usize;
pub type EdgeId = usize;
pub type FaceId = usize;
pub type HalfEdgeId = usize;

#[derive(Clone, Debug)]
pub struct SpannedLine {
    /// Defining point indices, `ends.0 < ends.1`.
    pub ends: (usize, usize),
    pub coeffs: HLine,
    /// Direction from `ends.0` to `ends.1`, positively scaled.
    pub dir: Vector,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum BoxSide {
    Bottom,
    Right,
    Top,
    Left,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum VertexKind {
    /// A point of the input set.
    Site(usize),
    /// Crossing of two spanned lines (line ids, smaller first).
    Crossing(usize, usize),
    BoxHit { line: usize, side: BoxSide },
    /// Box corner, counterclockwise from the bottom-left.
    Corner(u8),
}

#[derive(Clone, Debug)]
pub struct Vertex {
    pub kind: VertexKind,
    pub position: RationalPoint,
}

#[derive(Clone, Debug)]
pub enum EdgeSupport {
    /// Portion of a spanned line between two positions (`from < to`), in
    /// the line's own parametrization: 0 at `ends.0`, 1 at `ends.1`.
    Line { line: usize, from: Param, to: Param },
    Box(BoxSide),
}

#[derive(Clone, Debug)]
pub struct Edge {
    pub ends: (VertexId, VertexId),
    pub support: EdgeSupport,
}

#[derive(Clone, Debug)]
pub struct Face {
    /// Half-edges in counterclockwise order, face on their left.
    pub boundary: Vec<HalfEdgeId>,
    /// Interior point; `None` only for the face outside the box.
    pub representative: Option<RationalPoint>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BoundingBox {
    pub xmin: Rational,
    pub xmax: Rational,
    pub ymin: Rational,
    pub ymax: Rational,
}

impl BoundingBox {
    pub fn corners(&self) -> [RationalPoint; 4] {
        [
            RationalPoint::new(self.xmin.clone(), self.ymin.clone()),
            RationalPoint::new(self.xmax.clone(), self.ymin.clone()),
            RationalPoint::new(self.xmax.clone(), self.ymax.clone()),
            RationalPoint::new(self.xmin.clone(), self.ymax.clone()),
        ]
    }

    pub fn strictly_contains(&self, p: &RationalPoint) -> bool {
        p.x > self.xmin && p.x < self.xmax && p.y > self.ymin && p.y < self.ymax
    }
}

#[derive(Clone, Debug)]
pub struct Arrangement {
    points: Vec<RationalPoint>,
    hpoints: Vec<HPoint>,
    lines: Vec<SpannedLine>,
    vertices: Vec<Vertex>,
    edges: Vec<Edge>,
    next: Vec<HalfEdgeId>,
    half_face: Vec<FaceId>,
    faces: Vec<Face>,
    outer_face: FaceId,
    bbox: BoundingBox,
}

/// Faces of the full arrangement of `C(n, 2)` lines are at most
/// `C(C(n, 2), 2) + C(n, 2) + 1`; commands budget on the leading term.
pub fn projected_face_count(n: usize) -> u128 {
    let l = (n as u128) * (n as u128).saturating_sub(1) / 2;
    l * l.saturating_sub(1) / 2
}

pub fn check_budget(n: usize, budget: u128) -> Result<()> {
    let projected = projected_face_count(n);
    if projected > budget {
        return Err(Error::BudgetExceeded { projected, budget });
    }
    Ok(())
}

impl Arrangement {
    pub fn points(&self) -> &[RationalPoint] {
        &self.points
    }

    pub fn hpoints(&self) -> &[HPoint] {
        &self.hpoints
    }

    pub fn n(&self) -> usize {
        self.points.len()
    }

    pub fn lines(&self) -> &[SpannedLine] {
        &self.lines
    }

    pub fn vertices(&self) -> &[Vertex] {
        &self.vertices
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn faces(&self) -> &[Face] {
        &self.faces
    }

    pub fn outer_face(&self) -> FaceId {
        self.outer_face
    }

    pub fn bbox(&self) -> &BoundingBox {
        &self.bbox
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    /// Including the face outside the box.
    pub fn face_count(&self) -> usize {
        self.faces.len()
    }

    pub fn inner_faces(&self) -> impl Iterator<Item = FaceId> + '_ {
        (0..self.faces.len()).filter(move |&f| f != self.outer_face)
    }

    pub fn origin(&self, h: HalfEdgeId) -> VertexId {
        let e = &self.edges[h / 2];
        if h % 2 == 0 {
            e.ends.0
        } else {
            e.ends.1
        }
    }

    pub fn next(&self, h: HalfEdgeId) -> HalfEdgeId {
        self.next[h]
    }

    pub fn face_of(&self, h: HalfEdgeId) -> FaceId {
        self.half_face[h]
    }

    /// Faces on the two sides of an edge (left of forward, left of reverse).
    pub fn edge_faces(&self, e: EdgeId) -> (FaceId, FaceId) {
        (self.half_face[2 * e], self.half_face[2 * e + 1])
    }

    /// Number of edges at each degree.
    pub fn degree_histogram(&self) -> BTreeMap<usize, usize> {
        let mut deg = vec![0usize; self.vertices.len()];
        for e in &self.edges {
            deg[e.ends.0] += 1;
            deg[e.ends.1] += 1;
        }
        let mut h = BTreeMap::new();
        for d in deg {
            *h.entry(d).or_insert(0) += 1;
        }
        h
    }

    /// Spanned lines through a vertex, from its combinatorial identity.
    pub fn lines_at(&self, v: VertexId) -> Vec<usize> {
        match self.vertices[v].kind {
            VertexKind::Site(i) => (0..self.lines.len())
                .filter(|&l| self.lines[l].ends.0 == i || self.lines[l].ends.1 == i)
                .collect(),
            VertexKind::Crossing(a, b) => vec![a, b],
            VertexKind::BoxHit { line, .. } => vec![line],
            VertexKind::Corner(_) => vec![],
        }
    }

    /// Face containing `p` in its interior, if `p` is on no spanned line.
    /// Faces of the full arrangement are determined by their side of every
    /// line and each meets the box in one clipped face, so points outside
    /// the box are located too.
    pub fn locate(&self, p: &RationalPoint) -> Option<FaceId> {
        let hp = HPoint::from_rational(p);
        let sides: Vec<num_bigint::Sign> = self.lines.iter().map(|l| l.coeffs.side(&hp)).collect();
        if sides.contains(&num_bigint::Sign::NoSign) {
            return None;
        }
        self.inner_faces().find(|&f| {
            let rep = HPoint::from_rational(self.faces[f].representative.as_ref().expect("inner face"));
            self.lines.iter().zip(&sides).all(|(l, s)| l.coeffs.side(&rep) == *s)
        })
    }
}

/// Builds the clipped arrangement of all lines spanned by `s`.
pub fn build_arrangement(s: &ColoredPointSet) -> Result<Arrangement> {
    let n = s.len();
    if n < 3 {
        return Err(Error::TooFewPoints(n));
    }
    let hpoints = s.homogeneous();
    if let Some(v) = validate_homogeneous(&hpoints) {
        return Err(Error::NotValidated(v));
    }
    let points = s.points().to_vec();

    let lines: Vec<SpannedLine> = (0..n)
        .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
        .map(|(i, j)| SpannedLine {
            ends: (i, j),
            coeffs: hom::join(&hpoints[i], &hpoints[j]),
            dir: hpoints[i].vector_to(&hpoints[j]),
        })
        .collect();
    let nl = lines.len();

    let mut vertices: Vec<Vertex> = points
        .iter()
        .enumerate()
        .map(|(i, p)| Vertex { kind: VertexKind::Site(i), position: p.clone() })
        .collect();
    // homogeneous copy of every vertex position, for integer arithmetic
    let mut vertex_h: Vec<HPoint> = hpoints.clone();
    let mut on_line: Vec<Vec<(Param, VertexId)>> = lines
        .iter()
        .map(|l| vec![(Param::zero(), l.ends.0), (Param::one(), l.ends.1)])
        .collect();

    // All crossings between lines with disjoint endpoints, computed per line.
    let crossings: Vec<Vec<(usize, Param, Param, HPoint)>> = (0..nl)
        .into_par_iter()
        .map(|a| {
            let la = &lines[a];
            let mut out = Vec::new();
            for b in a + 1..nl {
                let lb = &lines[b];
                let (i, j) = la.ends;
                let (k, l) = lb.ends;
                if i == k || i == l || j == k || j == l {
                    continue;
                }
                let Some(ta) = crossing_param(&hpoints[i], &hpoints[j], &lb.coeffs) else {
                    continue;
                };
                let tb = crossing_param(&hpoints[k], &hpoints[l], &la.coeffs)
                    .expect("non-parallel both ways");
                let at = hom::meet(&la.coeffs, &lb.coeffs).expect("non-parallel");
                out.push((b, ta, tb, at));
            }
            out
        })
        .collect();
    for (a, list) in crossings.into_iter().enumerate() {
        for (b, ta, tb, at) in list {
            let v = vertices.len();
            vertices.push(Vertex { kind: VertexKind::Crossing(a, b), position: at.to_rational() });
            vertex_h.push(at);
            on_line[a].push((ta, v));
            on_line[b].push((tb, v));
        }
    }

    let bbox = choose_box(&vertices, &lines)?;

    // Line/box hits.
    let mut on_side: BTreeMap<BoxSide, Vec<(Rational, VertexId)>> = BTreeMap::new();
    for (li, l) in lines.iter().enumerate() {
        let p = &points[l.ends.0];
        let (dx, dy) = points[l.ends.1].sub(p);
        let mut hits: Vec<(Rational, BoxSide, RationalPoint)> = Vec::with_capacity(2);
        let sides = [
            (BoxSide::Left, &bbox.xmin, true),
            (BoxSide::Right, &bbox.xmax, true),
            (BoxSide::Bottom, &bbox.ymin, false),
            (BoxSide::Top, &bbox.ymax, false),
        ];
        for (side, value, vertical) in sides {
            let (num, den) = if vertical { (value - &p.x, &dx) } else { (value - &p.y, &dy) };
            if den.is_zero() {
                continue;
            }
            let t = num / den;
            let q = RationalPoint::new(&p.x + &t * &dx, &p.y + &t * &dy);
            let inside = if vertical {
                q.y > bbox.ymin && q.y < bbox.ymax
            } else {
                q.x > bbox.xmin && q.x < bbox.xmax
            };
            if inside {
                hits.push((t, side, q));
            }
        }
        if hits.len() != 2 {
            return Err(Error::DegenerateInput(format!(
                "line {li} meets the box boundary {} times",
                hits.len()
            )));
        }
        for (t, side, q) in hits {
            let v = vertices.len();
            let along = match side {
                BoxSide::Bottom | BoxSide::Top => q.x.clone(),
                BoxSide::Left | BoxSide::Right => q.y.clone(),
            };
            vertex_h.push(HPoint::from_rational(&q));
            vertices.push(Vertex { kind: VertexKind::BoxHit { line: li, side }, position: q });
            on_line[li].push((Param::from_rational(&t), v));
            on_side.entry(side).or_default().push((along, v));
        }
    }

    let corner0 = vertices.len();
    for (c, pos) in bbox.corners().into_iter().enumerate() {
        vertex_h.push(HPoint::from_rational(&pos));
        vertices.push(Vertex { kind: VertexKind::Corner(c as u8), position: pos });
    }

    let mut edges: Vec<Edge> = Vec::new();
    // Forward direction of each edge, by reference into `lines` or an axis.
    let mut edge_dir: Vec<EdgeDir> = Vec::new();
    for (li, list) in on_line.iter_mut().enumerate() {
        list.sort_by(|a, b| a.0.cmp(&b.0));
        for w in list.windows(2) {
            edges.push(Edge {
                ends: (w[0].1, w[1].1),
                support: EdgeSupport::Line { line: li, from: w[0].0.clone(), to: w[1].0.clone() },
            });
            edge_dir.push(EdgeDir::Line(li));
        }
    }
    // Box boundary, counterclockwise: Bottom (east), Right (north), Top
    // (west), Left (south).
    let side_specs = [
        (BoxSide::Bottom, corner0, corner0 + 1, false, (1, 0)),
        (BoxSide::Right, corner0 + 1, corner0 + 2, false, (0, 1)),
        (BoxSide::Top, corner0 + 2, corner0 + 3, true, (-1, 0)),
        (BoxSide::Left, corner0 + 3, corner0, true, (0, -1)),
    ];
    for (side, start, end, descending, axis) in side_specs {
        let mut list = on_side.remove(&side).unwrap_or_default();
        list.sort_by(|a, b| a.0.cmp(&b.0));
        if descending {
            list.reverse();
        }
        let mut chain = vec![start];
        chain.extend(list.into_iter().map(|(_, v)| v));
        chain.push(end);
        for w in chain.windows(2) {
            edges.push(Edge { ends: (w[0], w[1]), support: EdgeSupport::Box(side) });
            edge_dir.push(EdgeDir::Axis(axis.0, axis.1));
        }
    }

    // Counterclockwise rotation system at every vertex.
    let nv = vertices.len();
    let mut outgoing: Vec<Vec<HalfEdgeId>> = vec![Vec::new(); nv];
    for (e, edge) in edges.iter().enumerate() {
        outgoing[edge.ends.0].push(2 * e);
        outgoing[edge.ends.1].push(2 * e + 1);
    }
    let half_dir = |h: HalfEdgeId| -> Vector {
        let d = match edge_dir[h / 2] {
            EdgeDir::Line(l) => lines[l].dir.clone(),
            EdgeDir::Axis(x, y) => Vector::axis(x, y),
        };
        if h % 2 == 0 {
            d
        } else {
            d.neg()
        }
    };
    outgoing.par_iter_mut().for_each(|list| {
        let dirs: Vec<(HalfEdgeId, Vector)> = list.iter().map(|&h| (h, half_dir(h))).collect();
        let mut dirs = dirs;
        dirs.sort_by(|a, b| ccw_angle_cmp(&a.1, &b.1));
        *list = dirs.into_iter().map(|(h, _)| h).collect();
    });
    let nh = 2 * edges.len();
    let mut pos_at_origin = vec![0usize; nh];
    for list in &outgoing {
        for (k, &h) in list.iter().enumerate() {
            pos_at_origin[h] = k;
        }
    }
    let origin = |h: HalfEdgeId| if h % 2 == 0 { edges[h / 2].ends.0 } else { edges[h / 2].ends.1 };
    let mut next = vec![0usize; nh];
    for h in 0..nh {
        let twin = h ^ 1;
        let v = origin(twin);
        let list = &outgoing[v];
        let k = pos_at_origin[twin];
        next[h] = list[(k + list.len() - 1) % list.len()];
    }

    let mut half_face = vec![usize::MAX; nh];
    let mut cycles: Vec<Vec<HalfEdgeId>> = Vec::new();
    for start in 0..nh {
        if half_face[start] != usize::MAX {
            continue;
        }
        let f = cycles.len();
        let mut cycle = Vec::new();
        let mut h = start;
        loop {
            half_face[h] = f;
            cycle.push(h);
            h = next[h];
            if h == start {
                break;
            }
        }
        cycles.push(cycle);
    }

    // The half-edge leaving the bottom-left corner northwards (reverse of
    // the last Left edge) has the outside of the box on its left.
    let last_left = edges
        .iter()
        .rposition(|e| matches!(e.support, EdgeSupport::Box(BoxSide::Left)))
        .expect("box has a left side");
    let outer_face = half_face[2 * last_left + 1];

    let faces: Vec<Face> = cycles
        .into_par_iter()
        .enumerate()
        .map(|(f, boundary)| {
            // vertex average, accumulated over a common denominator
            let representative = (f != outer_face).then(|| {
                let (mut x, mut y, mut w) = (BigInt::zero(), BigInt::zero(), BigInt::one());
                for &h in &boundary {
                    let p = &vertex_h[origin(h)];
                    x = &x * &p.w + &p.x * &w;
                    y = &y * &p.w + &p.y * &w;
                    w *= &p.w;
                }
                w *= BigInt::from(boundary.len());
                HPoint { x, y, w }.to_rational()
            });
            Face { boundary, representative }
        })
        .collect();

    Ok(Arrangement {
        points,
        hpoints,
        lines,
        vertices,
        edges,
        next,
        half_face,
        faces,
        outer_face,
        bbox,
    })
}

#[derive(Clone, Copy, Debug)]
enum EdgeDir {
    Line(usize),
    Axis(i64, i64),
}

/// `[min - (max - min) - 1, max + (max - min) + 1]` per axis over every
/// vertex; widened while some line passes through a corner. Step k adds
/// 1/3 in x and 1/(k + 4) in y, so each corner moves along a strictly
/// convex path that no line meets more than twice.
fn choose_box(vertices: &[Vertex], lines: &[SpannedLine]) -> Result<BoundingBox> {
    let first = &vertices[0].position;
    let (mut xmin, mut xmax) = (first.x.clone(), first.x.clone());
    let (mut ymin, mut ymax) = (first.y.clone(), first.y.clone());
    for v in &vertices[1..] {
        let p = &v.position;
        if p.x < xmin {
            xmin = p.x.clone();
        }
        if p.x > xmax {
            xmax = p.x.clone();
        }
        if p.y < ymin {
            ymin = p.y.clone();
        }
        if p.y > ymax {
            ymax = p.y.clone();
        }
    }
    let one = Rational::one();
    let wx = &xmax - &xmin;
    let wy = &ymax - &ymin;
    let mut b = BoundingBox {
        xmin: &xmin - &wx - &one,
        xmax: &xmax + &wx + &one,
        ymin: &ymin - &wy - &one,
        ymax: &ymax + &wy + &one,
    };
    let third = rat(1, 3);
    for k in 0..256 {
        let corner_hit = b.corners().iter().any(|c| {
            let hc = HPoint::from_rational(c);
            lines.iter().any(|l| l.coeffs.side(&hc) == num_bigint::Sign::NoSign)
        });
        if !corner_hit {
            return Ok(b);
        }
        b = BoundingBox {
            xmin: &b.xmin - &third,
            xmax: &b.xmax + &third,
            ymin: &b.ymin - rat(1, k + 4),
            ymax: &b.ymax + rat(1, k + 4),
        };
    }
    Err(Error::DegenerateInput("could not place the clipping box".into()))
}
