//! Exact invariant suite over one point set.

use std::fmt;

use num_bigint::Sign;
use rayon::prelude::*;

use crate::arrangement::{binomial, compute_stats, ArrangementStats, EdgeKind, EdgeSupport, VertexKind};
use crate::circular::CircularOrder;
use crate::enumeration::{interior_distinctness, Analysis, DistinctnessReport, OrderingCensus};
use crate::error::Result;
use crate::hom::HPoint;
use crate::pointset::ColoredPointSet;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Check {
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

impl fmt::Display for Check {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let tag = if self.passed { "PASS" } else { "FAIL" };
        write!(f, "{tag} {}: {}", self.name, self.detail)
    }
}

#[derive(Clone, Debug)]
pub struct VerifyReport {
    pub checks: Vec<Check>,
    pub stats: ArrangementStats,
    pub census: OrderingCensus,
}

impl VerifyReport {
    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }
}

/// `cr >= ceil(3/8 * C(n, 4))`.
pub fn crossing_lower_bound(n: u64) -> u64 {
    (3 * binomial(n, 4)).div_ceil(8)
}

/// `V - E + F` on the clipped subdivision.
pub fn euler_characteristic(a: &Analysis) -> i64 {
    let arr = &a.arrangement;
    arr.vertex_count() as i64 - arr.edge_count() as i64 + arr.face_count() as i64
}

/// Vertices whose line count, found by testing every spanned line against
/// the vertex position, differs from what strong general position predicts:
/// 2 at crossings, `n - 1` at input points, 1 on the box away from corners.
pub fn degree_violations(a: &Analysis) -> Vec<usize> {
    let arr = &a.arrangement;
    let n = arr.n();
    arr.vertices()
        .par_iter()
        .enumerate()
        .filter_map(|(v, vx)| {
            let hp = HPoint::from_rational(&vx.position);
            let on = arr.lines().iter().filter(|l| l.coeffs.side(&hp) == Sign::NoSign).count();
            let expected = match vx.kind {
                VertexKind::Site(_) => n - 1,
                VertexKind::Crossing(..) => 2,
                VertexKind::BoxHit { .. } => 1,
                VertexKind::Corner(_) => 0,
            };
            (on != expected).then_some(v)
        })
        .collect()
}

/// Edges whose two faces break the adjacency rules: equal orders across
/// segment interiors, the defining pair swapped across half-lines.
pub fn adjacency_violations(a: &Analysis) -> Vec<usize> {
    let arr = &a.arrangement;
    (0..arr.edge_count())
        .into_par_iter()
        .filter(|&e| {
            let kind = a.kinds[e];
            if kind == EdgeKind::BoxBoundary {
                return false;
            }
            let (f, g) = arr.edge_faces(e);
            let (Some(of), Some(og)) = (&a.face_orders[f], &a.face_orders[g]) else {
                return true;
            };
            match (&arr.edges()[e].support, kind) {
                (_, EdgeKind::SegmentInterior) => of != og,
                (EdgeSupport::Line { line, .. }, EdgeKind::HalfLine) => {
                    let (x1, x2) = arr.lines()[*line].ends;
                    of.apply_swap(x1, x2).as_ref() != Some(og)
                }
                _ => true,
            }
        })
        .collect()
}

/// Cells containing faces with different orders.
pub fn soundness_violations(a: &Analysis) -> Vec<usize> {
    let mut first: Vec<Option<&CircularOrder>> = vec![None; a.partition.cell_count()];
    let mut bad = Vec::new();
    for (f, c) in a.partition.face_to_cell().iter().enumerate() {
        let (Some(c), Some(o)) = (c, &a.face_orders[f]) else { continue };
        match first[*c] {
            None => first[*c] = Some(o),
            Some(prev) if prev != o => {
                if !bad.contains(c) {
                    bad.push(*c);
                }
            }
            _ => {}
        }
    }
    bad
}

fn check(name: &'static str, passed: bool, detail: impl Into<String>) -> Check {
    Check { name, passed, detail: detail.into() }
}

/// Builds everything for `s` and runs each invariant. The arrangement build
/// rejects sets that are not in strong general position.
pub fn verify_all(s: &ColoredPointSet) -> Result<VerifyReport> {
    let a = Analysis::new(s)?;
    verify_analysis(s, &a)
}

pub fn verify_analysis(s: &ColoredPointSet, a: &Analysis) -> Result<VerifyReport> {
    let stats = compute_stats(&a.arrangement, &a.partition)?;
    let census = OrderingCensus::from_analysis(a, s)?;
    let n = stats.n as u64;
    let mut checks = Vec::new();

    let chi = euler_characteristic(a);
    checks.push(check("euler", chi == 2, format!("V - E + F = {} - {} + {} = {chi}", stats.v, stats.e, stats.f)));

    let deg = degree_violations(a);
    let hist: Vec<String> = stats.degree_histogram.iter().map(|(d, c)| format!("{d}:{c}")).collect();
    checks.push(check(
        "degrees",
        deg.is_empty(),
        format!("{} vertices off the expected line count; histogram {}", deg.len(), hist.join(" ")),
    ));

    let expected_m = 3 * binomial(n, 4) as i64 - 2 * stats.cr as i64;
    checks.push(check(
        "m-cr-identity",
        stats.m as i64 == expected_m,
        format!("M = {}, 3*C(n,4) - 2*cr = {expected_m}", stats.m),
    ));

    let adj = adjacency_violations(a);
    checks.push(check("adjacency", adj.is_empty(), format!("{} edges violate the crossing rules", adj.len())));

    let sound = soundness_violations(a);
    checks.push(check(
        "partition-soundness",
        sound.is_empty(),
        format!("{} of {} cells mix orders", sound.len(), stats.order_cells),
    ));

    let (passed, detail) = match interior_distinctness(a)? {
        DistinctnessReport::Pass { interior_cells } => {
            (true, format!("{interior_cells} interior cells, all orders distinct"))
        }
        DistinctnessReport::CounterexamplePair { cells, order, .. } => {
            (false, format!("cells {} and {} share order {order}", cells.0, cells.1))
        }
        DistinctnessReport::ValidationRequired(v) => (false, v.to_string()),
    };
    checks.push(check("interior-distinctness", passed, detail));

    let bounds = census.rho <= census.order_cells && census.order_cells <= census.faces;
    checks.push(check(
        "cell-bounds",
        bounds,
        format!("rho = {} <= cells = {} <= F = {}", census.rho, census.order_cells, census.faces),
    ));

    Ok(VerifyReport { checks, stats, census })
}
