use std::collections::{BTreeMap, BTreeSet};

use num_bigint::Sign;
use rayon::prelude::*;

use crate::arrangement::{Arrangement, FaceId, OrderPartition, VertexKind};
use crate::error::Result;
use crate::hom::{orient, HPoint};
use crate::kernel::{convex_hull, RationalPoint};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ArrangementStats {
    pub n: usize,
    pub line_count: usize,
    pub v: usize,
    pub e: usize,
    pub f: usize,
    pub degree_histogram: BTreeMap<usize, usize>,
    /// Crossings strictly inside at least one spanned segment.
    pub m: u64,
    /// Number of 4-subsets in convex position.
    pub cr: u64,
    pub order_cells: usize,
    pub interior_order_cells: usize,
}

impl ArrangementStats {
    pub const CSV_HEADER: &'static str = "n,lines,V,E,F,M,cr,order_cells,interior_order_cells";

    pub fn csv_row(&self) -> String {
        format!(
            "{},{},{},{},{},{},{},{},{}",
            self.n,
            self.line_count,
            self.v,
            self.e,
            self.f,
            self.m,
            self.cr,
            self.order_cells,
            self.interior_order_cells
        )
    }
}

pub fn binomial(n: u64, k: u64) -> u64 {
    if k > n {
        return 0;
    }
    let mut r = 1u64;
    for i in 0..k {
        r = r * (n - i) / (i + 1);
    }
    r
}

/// Brute force over all 4-subsets: a 4-subset is in convex position iff no
/// point lies inside the triangle of the other three.
pub fn count_convex_quadrilaterals(points: &[HPoint]) -> u64 {
    let n = points.len();
    let inside = |p: &HPoint, a: &HPoint, b: &HPoint, c: &HPoint| {
        let s = orient(a, b, c);
        orient(a, b, p) == s && orient(b, c, p) == s && orient(c, a, p) == s
    };
    (0..n)
        .into_par_iter()
        .map(|a| {
            let mut count = 0u64;
            for b in a + 1..n {
                for c in b + 1..n {
                    for d in c + 1..n {
                        let [pa, pb, pc, pd] = [&points[a], &points[b], &points[c], &points[d]];
                        let nonconvex = inside(pa, pb, pc, pd)
                            || inside(pb, pa, pc, pd)
                            || inside(pc, pa, pb, pd)
                            || inside(pd, pa, pb, pc);
                        if !nonconvex {
                            count += 1;
                        }
                    }
                }
            }
            count
        })
        .sum()
}

/// Crossings of two spanned lines lying strictly inside the segment of at
/// least one of them. The crossing of lines `ij` and `kl` is inside segment
/// `ij` iff `i` and `j` are strictly on opposite sides of line `kl`.
pub fn count_segment_vertices(arr: &Arrangement) -> u64 {
    let hp = arr.hpoints();
    let lines = arr.lines();
    arr.vertices()
        .par_iter()
        .filter(|v| match v.kind {
            VertexKind::Crossing(a, b) => {
                let (i, j) = lines[a].ends;
                let (k, l) = lines[b].ends;
                let separated = |p: usize, q: usize, r: usize, s: usize| {
                    orient(&hp[r], &hp[s], &hp[p]) != orient(&hp[r], &hp[s], &hp[q])
                };
                separated(i, j, k, l) || separated(k, l, i, j)
            }
            _ => false,
        })
        .count() as u64
}

/// Inner faces whose representative is strictly inside the convex hull.
///
/// Every hull edge is a spanned segment and so a union of arrangement
/// edges; no face crosses the hull boundary and the representative test
/// alone decides membership.
pub fn interior_face_representatives(arr: &Arrangement) -> Result<Vec<(FaceId, RationalPoint)>> {
    let hull = convex_hull(arr.points())?;
    let hull_h: Vec<&HPoint> = hull.iter().map(|&i| &arr.hpoints()[i]).collect();
    let k = hull_h.len();
    let faces: Vec<FaceId> = arr.inner_faces().collect();
    Ok(faces
        .into_par_iter()
        .filter_map(|f| {
            let rep = arr.faces()[f].representative.as_ref()?;
            let q = HPoint::from_rational(rep);
            (0..k)
                .all(|i| orient(hull_h[i], hull_h[(i + 1) % k], &q) == Sign::Minus)
                .then(|| (f, rep.clone()))
        })
        .collect())
}

pub fn compute_stats(arr: &Arrangement, partition: &OrderPartition) -> Result<ArrangementStats> {
    let interior: BTreeSet<usize> = interior_face_representatives(arr)?
        .into_iter()
        .filter_map(|(f, _)| partition.cell_of(f))
        .collect();
    Ok(ArrangementStats {
        n: arr.n(),
        line_count: arr.lines().len(),
        v: arr.vertex_count(),
        e: arr.edge_count(),
        f: arr.face_count(),
        degree_histogram: arr.degree_histogram(),
        m: count_segment_vertices(arr),
        cr: count_convex_quadrilaterals(arr.hpoints()),
        order_cells: partition.cell_count(),
        interior_order_cells: interior.len(),
    })
}
