mod common;

use std::collections::{BTreeMap, BTreeSet};

use common::{convex_quadrilaterals, crossing_extent, segment_crossings, segment_interior_hits, set, GridOracle};
use radial_core::arrangement::{build_arrangement, compute_stats, count_segment_vertices, EdgeKind};
use radial_core::constructions::{gen_convex, gen_random_sgp, ColorScheme};
use radial_core::enumeration::Analysis;
use radial_core::kernel::RationalPoint;

const TRIANGLE: [(i64, i64); 3] = [(0, 0), (6, 1), (2, 5)];
const QUAD: [(i64, i64); 4] = [(0, 0), (6, -2), (8, 5), (-1, 6)];
const FIVE: [(i64, i64); 5] = [(0, 0), (7, 1), (5, 6), (1, 4), (3, 2)];

fn int_coords(s: &radial_core::pointset::ColoredPointSet) -> Vec<(i64, i64)> {
    s.points()
        .iter()
        .map(|p| (p.x.to_integer().try_into().unwrap(), p.y.to_integer().try_into().unwrap()))
        .collect()
}

/// Components smaller than this are slivers cut off near a vertex by the
/// grid resolution; their order is still checked.
const MIN_COMPONENT: usize = 8;

/// Components of the grid oracle and order cells must correspond one to
/// one, with the radial order constant on each.
fn check_against_grid(coords: &[(i64, i64)], scale: i64, reach: i64) {
    assert!(2 * scale * crossing_extent(coords) < reach, "grid misses a crossing");
    let s = set(coords, None);
    let a = Analysis::new(&s).unwrap();
    let grid = GridOracle::new(coords, scale, reach);
    let orders = a.cell_orders();
    let mut cells_of_big = Vec::new();
    for (c, members) in grid.components.iter().enumerate() {
        assert_eq!(grid.orders[c].len(), 1, "component {c} sees several orders");
        let cells: BTreeSet<usize> =
            members.iter().step_by(37).chain(members.last()).filter_map(|p| a.cell_at(p)).collect();
        assert_eq!(cells.len(), 1, "component {c} spans cells {cells:?}");
        let cell = *cells.iter().next().unwrap();
        assert_eq!(grid.orders[c].iter().next().unwrap(), &orders[cell].sequence().to_vec());
        if members.len() >= MIN_COMPONENT {
            cells_of_big.push(cell);
        }
    }
    let distinct: BTreeSet<usize> = cells_of_big.iter().copied().collect();
    assert_eq!(distinct.len(), cells_of_big.len(), "two components share a cell");
    assert_eq!(distinct.len(), a.partition.cell_count());
}

#[test]
fn triangle_cells_match_grid() {
    // interior joined to the three side regions, plus three vertical angles
    check_against_grid(&TRIANGLE, 4, 301);
    let a = Analysis::new(&set(&TRIANGLE, None)).unwrap();
    assert_eq!(a.partition.cell_count(), 4);
}

#[test]
fn quadrilateral_cells_match_grid() {
    check_against_grid(&QUAD, 8, 801);
}

#[test]
fn five_points_cells_match_grid() {
    check_against_grid(&FIVE, 24, 1601);
}

#[test]
fn crossing_counts_match_brute_force() {
    for (coords, cr, m) in [(&TRIANGLE[..], 0, 0), (&QUAD[..], 1, 1)] {
        let s = set(coords, None);
        let arr = build_arrangement(&s).unwrap();
        assert_eq!(count_segment_vertices(&arr), m);
        let a = Analysis::new(&s).unwrap();
        let stats = compute_stats(&a.arrangement, &a.partition).unwrap();
        assert_eq!(stats.cr, cr);
        assert_eq!(stats.m, m);
    }
    for seed in 0..6 {
        let s = gen_random_sgp(6, ColorScheme::None, seed).unwrap();
        let c = int_coords(&s);
        let a = Analysis::new(&s).unwrap();
        let stats = compute_stats(&a.arrangement, &a.partition).unwrap();
        assert_eq!(stats.cr, convex_quadrilaterals(&c), "seed {seed}");
        assert_eq!(stats.m, segment_crossings(&c), "seed {seed}");
    }
}

#[test]
fn convex_position_counts() {
    let s = gen_convex(5, ColorScheme::None, 3).unwrap();
    let a = Analysis::new(&s).unwrap();
    let stats = compute_stats(&a.arrangement, &a.partition).unwrap();
    assert_eq!(stats.cr, 5);
    assert_eq!(stats.m, 5);
}

#[test]
fn six_random_points_reach_crossing_bound() {
    // the fixed seed gives a set with cr at least ceil(3/8 * C(6,4)) = 6
    let s = gen_random_sgp(6, ColorScheme::None, 11).unwrap();
    let cr = convex_quadrilaterals(&int_coords(&s));
    let a = Analysis::new(&s).unwrap();
    let stats = compute_stats(&a.arrangement, &a.partition).unwrap();
    assert_eq!(stats.cr, cr);
    assert!(cr >= 6, "cr = {cr}");
}

#[test]
fn euler_and_degrees() {
    for seed in 0..5 {
        let s = gen_random_sgp(7, ColorScheme::None, seed).unwrap();
        let arr = build_arrangement(&s).unwrap();
        let (v, e, f) = (arr.vertex_count() as i64, arr.edge_count() as i64, arr.face_count() as i64);
        assert_eq!(v - e + f, 2);
        // every site meets n - 1 lines, every crossing two
        let mut by_lines: BTreeMap<usize, usize> = BTreeMap::new();
        for vid in 0..arr.vertex_count() {
            *by_lines.entry(arr.lines_at(vid).len()).or_insert(0) += 1;
        }
        assert_eq!(by_lines.get(&6), Some(&7));
    }
}

#[test]
fn edge_kinds_cover_every_edge() {
    let s = set(&QUAD, None);
    let a = Analysis::new(&s).unwrap();
    assert_eq!(a.kinds.len(), a.arrangement.edge_count());
    let segments = a.kinds.iter().filter(|k| **k == EdgeKind::SegmentInterior).count();
    // each segment is split once by every line crossing its interior
    assert_eq!(segments as u64, 6 + segment_interior_hits(&QUAD));
}

#[test]
fn locate_rejects_points_on_lines() {
    let s = set(&QUAD, None);
    let arr = build_arrangement(&s).unwrap();
    assert!(arr.locate(&RationalPoint::from_ints(12, -4)).is_none());
    assert!(arr.locate(&RationalPoint::from_ints(3, 1)).is_some());
}
