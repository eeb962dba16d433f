use std::collections::BTreeSet;

use proptest::prelude::*;

use radial_core::circular::{canonical_rotation, radial_order, star_polygonization, CircularOrder};
use radial_core::constructions::{gen_random_sgp, ColorScheme};
use radial_core::kernel::{convex_hull, int, orientation, rat, Orientation, Rational, RationalPoint};
use radial_core::pointset::{validate_strong_general_position, ColoredPointSet, Validation};

fn set(coords: &[(i64, i64)]) -> ColoredPointSet {
    ColoredPointSet::uncolored(coords.iter().map(|&(x, y)| RationalPoint::from_ints(x, y)).collect()).unwrap()
}

fn to_f64(r: &Rational) -> f64 {
    use num_traits::ToPrimitive;
    r.to_f64().unwrap()
}

/// Every triple and every point where three spanned lines meet, by brute force.
fn brute_force_sgp(s: &ColoredPointSet) -> bool {
    let p = s.points();
    let n = p.len();
    let mut lines = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            for k in j + 1..n {
                if orientation(&p[i], &p[j], &p[k]) == Orientation::Collinear {
                    return false;
                }
            }
            lines.push((i, j));
        }
    }
    let meet = |(a, b): (usize, usize), (c, d): (usize, usize)| -> Option<RationalPoint> {
        let (x1, y1, x2, y2) = (&p[a].x, &p[a].y, &p[b].x, &p[b].y);
        let (x3, y3, x4, y4) = (&p[c].x, &p[c].y, &p[d].x, &p[d].y);
        let den = (x1 - x2) * (y3 - y4) - (y1 - y2) * (x3 - x4);
        if den == int(0) {
            return None;
        }
        let a1 = x1 * y2 - y1 * x2;
        let a2 = x3 * y4 - y3 * x4;
        Some(RationalPoint::new(
            (&a1 * (x3 - x4) - (x1 - x2) * &a2) / &den,
            (&a1 * (y3 - y4) - (y1 - y2) * &a2) / &den,
        ))
    };
    for (x, &l1) in lines.iter().enumerate() {
        for (y, &l2) in lines.iter().enumerate().skip(x + 1) {
            let Some(q) = meet(l1, l2) else { continue };
            if p.contains(&q) {
                continue;
            }
            if lines.iter().skip(y + 1).any(|&l3| {
                let (a, b) = l3;
                orientation(&p[a], &p[b], &q) == Orientation::Collinear
            }) {
                return false;
            }
        }
    }
    true
}

#[test]
fn small_set_is_valid_by_both_checks() {
    let s = set(&[(0, 0), (1, 0), (0, 1), (5, 7)]);
    assert!(brute_force_sgp(&s));
    assert_eq!(validate_strong_general_position(&s), Validation::Valid);
}

#[test]
fn validation_agrees_with_brute_force_on_small_grids() {
    // coordinates in a 4 x 4 grid produce plenty of collinear and
    // concurrent configurations
    let mut seen = [0usize; 2];
    for mask in 0u32..(1 << 16) {
        if mask.count_ones() != 5 || mask % 7 != 0 {
            continue;
        }
        let coords: Vec<(i64, i64)> =
            (0..16).filter(|b| mask >> b & 1 == 1).map(|b| ((b % 4) as i64, (b / 4) as i64 * 3 + (b % 2) as i64)).collect();
        let s = set(&coords);
        let oracle = brute_force_sgp(&s);
        assert_eq!(validate_strong_general_position(&s).is_valid(), oracle, "{coords:?}");
        seen[oracle as usize] += 1;
    }
    assert!(seen[0] > 0 && seen[1] > 0, "{seen:?}");
}

#[test]
fn hull_matches_halfplane_oracle() {
    for seed in 0..10 {
        let s = gen_random_sgp(5, ColorScheme::None, seed).unwrap();
        let p = s.points();
        let hull = convex_hull(p).unwrap();
        // clockwise: every point is right of or on every hull edge
        for k in 0..hull.len() {
            let (a, b) = (&p[hull[k]], &p[hull[(k + 1) % hull.len()]]);
            assert!(p.iter().all(|q| orientation(a, b, q) != Orientation::Counterclockwise));
        }
        // and every point off the hull is strictly inside
        let on: BTreeSet<usize> = hull.iter().copied().collect();
        for (i, q) in p.iter().enumerate().filter(|(i, _)| !on.contains(i)) {
            for k in 0..hull.len() {
                let (a, b) = (&p[hull[k]], &p[hull[(k + 1) % hull.len()]]);
                assert_eq!(orientation(a, b, q), Orientation::Clockwise, "point {i}");
            }
        }
    }
}

/// Clockwise order by floating angle, for observation points well away
/// from every spanned line.
fn float_order(s: &ColoredPointSet, obs: &RationalPoint) -> Vec<usize> {
    let (ox, oy) = (to_f64(&obs.x), to_f64(&obs.y));
    let mut idx: Vec<(f64, usize)> = s
        .points()
        .iter()
        .enumerate()
        .map(|(i, p)| (-(to_f64(&p.y) - oy).atan2(to_f64(&p.x) - ox), i))
        .collect();
    idx.sort_by(|a, b| a.0.total_cmp(&b.0));
    idx.into_iter().map(|x| x.1).collect()
}

#[test]
fn triangle_order_below_and_above_base() {
    let s = set(&[(-1, 0), (1, 0), (0, 1)]);
    let below = RationalPoint::new(int(0), rat(-1, 10));
    let o = radial_order(&s, &below).unwrap();
    assert_eq!(o.sequence(), &[0, 2, 1]);
    assert_eq!(o, CircularOrder::from_sequence(&float_order(&s, &below)).unwrap());
    let above = RationalPoint::new(int(0), rat(1, 10));
    assert_eq!(radial_order(&s, &above).unwrap(), o);
}

#[test]
fn radial_order_matches_float_oracle() {
    for seed in 0..20 {
        let s = gen_random_sgp(7, ColorScheme::None, seed).unwrap();
        let obs = RationalPoint::new(rat(2 * seed as i64 + 1001, 1), rat(1777, 1));
        let exact = radial_order(&s, &obs).unwrap();
        assert_eq!(exact, CircularOrder::from_sequence(&float_order(&s, &obs)).unwrap(), "seed {seed}");
    }
}

fn segments_cross(a: &RationalPoint, b: &RationalPoint, c: &RationalPoint, d: &RationalPoint) -> bool {
    let o1 = orientation(a, b, c);
    let o2 = orientation(a, b, d);
    let o3 = orientation(c, d, a);
    let o4 = orientation(c, d, b);
    let proper = o1 != o2 && o3 != o4 && [o1, o2, o3, o4].iter().all(|&o| o != Orientation::Collinear);
    let on = |p: &RationalPoint, q: &RationalPoint, r: &RationalPoint| {
        orientation(p, q, r) == Orientation::Collinear
            && r.x >= p.x.clone().min(q.x.clone())
            && r.x <= p.x.clone().max(q.x.clone())
            && r.y >= p.y.clone().min(q.y.clone())
            && r.y <= p.y.clone().max(q.y.clone())
    };
    proper || on(a, b, c) || on(a, b, d) || on(c, d, a) || on(c, d, b)
}

#[test]
fn star_polygon_is_simple() {
    for seed in 0..10 {
        let s = gen_random_sgp(6, ColorScheme::None, seed).unwrap();
        let p = s.points();
        let hull = convex_hull(p).unwrap();
        // centroid of three hull vertices is strictly inside
        let three = int(3);
        let obs = RationalPoint::new(
            (&p[hull[0]].x + &p[hull[1]].x + &p[hull[2]].x) / &three,
            (&p[hull[0]].y + &p[hull[1]].y + &p[hull[2]].y) / &three,
        );
        let Ok(poly) = star_polygonization(&s, &obs) else { continue };
        let k = poly.len();
        assert_eq!(k, 6);
        for i in 0..k {
            for j in i + 1..k {
                // adjacent edges share a vertex and are skipped
                if j == i + 1 || (i == 0 && j == k - 1) {
                    continue;
                }
                let (a, b) = (&p[poly[i]], &p[poly[(i + 1) % k]]);
                let (c, d) = (&p[poly[j]], &p[poly[(j + 1) % k]]);
                assert!(!segments_cross(a, b, c, d), "seed {seed}: edges {i} and {j} meet");
            }
        }
    }
}

#[test]
fn star_polygon_rejects_outside_point() {
    let s = set(&[(0, 0), (4, 0), (0, 4), (1, 1)]);
    assert!(star_polygonization(&s, &RationalPoint::from_ints(10, 10)).is_err());
}

proptest! {
    #[test]
    fn canonical_rotation_ignores_rotation(seq in proptest::collection::vec(0u8..4, 1..12), shift in 0usize..12) {
        let mut rotated = seq.clone();
        rotated.rotate_left(shift % seq.len());
        prop_assert_eq!(canonical_rotation(&seq).unwrap().0, canonical_rotation(&rotated).unwrap().0);
    }

    #[test]
    fn point_sets_round_trip(coords in proptest::collection::btree_set((-1000i64..1000, 1i64..50, -1000i64..1000, 1i64..50), 3..8)) {
        let points: Vec<RationalPoint> = coords
            .iter()
            .map(|&(a, b, c, d)| RationalPoint::new(rat(a, b), rat(c, d)))
            .collect();
        let unique: BTreeSet<RationalPoint> = points.iter().cloned().collect();
        prop_assume!(unique.len() == points.len());
        let s = ColoredPointSet::uncolored(points).unwrap();
        let back = ColoredPointSet::from_json(&s.to_json(None)).unwrap();
        prop_assert_eq!(back.set, s);
    }
}
