//! Integer oracles shared by the integration tests. Everything here works on
//! small integer coordinates and never calls into the arrangement code.

#![allow(dead_code)]

use std::collections::{BTreeMap, BTreeSet};

use radial_core::kernel::{rat, RationalPoint};
use radial_core::pointset::{Color, ColoredPointSet};

pub fn set(coords: &[(i64, i64)], colors: Option<&str>) -> ColoredPointSet {
    let points = coords.iter().map(|&(x, y)| RationalPoint::from_ints(x, y)).collect();
    let colors = colors.map(|c| c.chars().map(|ch| Color::from_letter(&ch.to_string()).unwrap()).collect());
    ColoredPointSet::new(points, colors).unwrap()
}

fn orient(p: (i64, i64), q: (i64, i64), r: (i64, i64)) -> i64 {
    ((q.0 - p.0) * (r.1 - p.1) - (q.1 - p.1) * (r.0 - p.0)).signum()
}

/// Smallest rotation of a cyclic sequence, by trying all of them.
pub fn least_rotation<T: Ord + Clone>(s: &[T]) -> Vec<T> {
    (0..s.len())
        .map(|k| s[k..].iter().chain(&s[..k]).cloned().collect::<Vec<T>>())
        .min()
        .unwrap_or_default()
}

/// Number of 4-subsets in convex position: no point inside the triangle
/// of the other three.
pub fn convex_quadrilaterals(p: &[(i64, i64)]) -> u64 {
    let n = p.len();
    let inside = |a: usize, b: usize, c: usize, d: usize| {
        let s = [orient(p[a], p[b], p[d]), orient(p[b], p[c], p[d]), orient(p[c], p[a], p[d])];
        s.iter().all(|&x| x == s[0])
    };
    let mut count = 0;
    for a in 0..n {
        for b in a + 1..n {
            for c in b + 1..n {
                for d in c + 1..n {
                    let q = [a, b, c, d];
                    let any_inside = (0..4).any(|k| {
                        let rest: Vec<usize> = q.iter().copied().filter(|&x| x != q[k]).collect();
                        inside(rest[0], rest[1], rest[2], q[k])
                    });
                    count += u64::from(!any_inside);
                }
            }
        }
    }
    count
}

/// Crossings of two spanned lines without common points that lie strictly
/// inside at least one of the two segments.
pub fn segment_crossings(p: &[(i64, i64)]) -> u64 {
    let n = p.len();
    let mut pairs = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            pairs.push((i, j));
        }
    }
    // the crossing with line cd is strictly inside ab iff a and b are on
    // strictly opposite sides of cd
    let splits = |(a, b): (usize, usize), (c, d): (usize, usize)| orient(p[c], p[d], p[a]) * orient(p[c], p[d], p[b]) < 0;
    let mut count = 0;
    for (x, &l1) in pairs.iter().enumerate() {
        for &l2 in &pairs[x + 1..] {
            if l1.0 == l2.0 || l1.0 == l2.1 || l1.1 == l2.0 || l1.1 == l2.1 {
                continue;
            }
            count += u64::from(splits(l1, l2) || splits(l2, l1));
        }
    }
    count
}

/// Largest absolute coordinate over the points and every crossing of two
/// spanned lines, rounded up.
pub fn crossing_extent(p: &[(i64, i64)]) -> i64 {
    let n = p.len();
    let mut m = p.iter().map(|q| q.0.abs().max(q.1.abs())).max().unwrap_or(0);
    let mut lines = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            lines.push((p[i], p[j]));
        }
    }
    for (x, &((x1, y1), (x2, y2))) in lines.iter().enumerate() {
        for &((x3, y3), (x4, y4)) in &lines[x + 1..] {
            let den = (x1 - x2) * (y3 - y4) - (y1 - y2) * (x3 - x4);
            if den == 0 {
                continue;
            }
            let a1 = x1 * y2 - y1 * x2;
            let a2 = x3 * y4 - y3 * x4;
            let cx = a1 * (x3 - x4) - (x1 - x2) * a2;
            let cy = a1 * (y3 - y4) - (y1 - y2) * a2;
            let d = den.abs();
            m = m.max((cx.abs() + d - 1) / d).max((cy.abs() + d - 1) / d);
        }
    }
    m
}

/// Pairs (segment, line without a common point) where the line crosses the
/// segment's interior.
pub fn segment_interior_hits(p: &[(i64, i64)]) -> u64 {
    let n = p.len();
    let mut count = 0;
    for i in 0..n {
        for j in i + 1..n {
            for k in 0..n {
                for l in k + 1..n {
                    if [k, l].iter().any(|x| *x == i || *x == j) {
                        continue;
                    }
                    count += u64::from(orient(p[k], p[l], p[i]) * orient(p[k], p[l], p[j]) < 0);
                }
            }
        }
    }
    count
}

/// Cells of the plane minus all spanned half-lines, found by flood fill on
/// a grid of odd integer samples; samples inside a segment carry no
/// exact point of a cell. Points are scaled by `2 * scale` so the
/// samples never coincide with them.
pub struct GridOracle {
    pub scale: i64,
    /// Per component: its samples, as exact points of the original frame.
    pub components: Vec<Vec<RationalPoint>>,
    /// Per component: the clockwise order of every sample in it, as a
    /// least rotation.
    pub orders: Vec<BTreeSet<Vec<usize>>>,
}

impl GridOracle {
    pub fn new(p: &[(i64, i64)], scale: i64, reach: i64) -> GridOracle {
        let pts: Vec<(i64, i64)> = p.iter().map(|&(x, y)| (2 * scale * x, 2 * scale * y)).collect();
        let n = pts.len();
        let mut lines = Vec::new();
        for i in 0..n {
            for j in i + 1..n {
                lines.push((pts[i], pts[j]));
            }
        }
        let side = (reach / 2) as usize * 2 + 1;
        let coord = |k: usize| -reach + 2 * k as i64;
        // samples inside a segment see its endpoints in opposite directions
        // and are kept; samples on a half-line are dropped
        let on_line = |s: (i64, i64)| {
            lines.iter().any(|&(a, b)| {
                orient(a, b, s) == 0 && (s.0 - a.0) * (s.0 - b.0) + (s.1 - a.1) * (s.1 - b.1) > 0
            })
        };
        // a grid step from s to t crosses the half-line part of ab
        let blocked = |s: (i64, i64), t: (i64, i64)| {
            lines.iter().any(|&(a, b)| {
                orient(a, b, s) * orient(a, b, t) < 0 && orient(s, t, a) * orient(s, t, b) >= 0
            })
        };
        let idx = |i: usize, j: usize| i * side + j;
        let mut label = vec![usize::MAX; side * side];
        let mut components = Vec::new();
        let mut orders = Vec::new();
        for i0 in 0..side {
            for j0 in 0..side {
                let s0 = (coord(i0), coord(j0));
                if label[idx(i0, j0)] != usize::MAX || on_line(s0) {
                    continue;
                }
                let c = components.len();
                let mut members = Vec::new();
                let mut seen_orders = BTreeSet::new();
                let mut stack = vec![(i0, j0)];
                label[idx(i0, j0)] = c;
                while let Some((i, j)) = stack.pop() {
                    let s = (coord(i), coord(j));
                    members.push(RationalPoint::new(rat(s.0, 2 * scale), rat(s.1, 2 * scale)));
                    seen_orders.insert(float_order(&pts, s));
                    let mut nb = Vec::new();
                    if i > 0 {
                        nb.push((i - 1, j));
                    }
                    if j > 0 {
                        nb.push((i, j - 1));
                    }
                    if i + 1 < side {
                        nb.push((i + 1, j));
                    }
                    if j + 1 < side {
                        nb.push((i, j + 1));
                    }
                    for (a, b) in nb {
                        let t = (coord(a), coord(b));
                        if label[idx(a, b)] == usize::MAX && !on_line(t) && !blocked(s, t) {
                            label[idx(a, b)] = c;
                            stack.push((a, b));
                        }
                    }
                }
                components.push(members);
                orders.push(seen_orders);
            }
        }
        GridOracle { scale, components, orders }
    }

    pub fn distinct_orders(&self) -> BTreeSet<Vec<usize>> {
        self.orders.iter().flatten().cloned().collect()
    }

    pub fn distinct_words(&self, colors: &str) -> BTreeSet<String> {
        let c: Vec<char> = colors.chars().collect();
        self.distinct_orders()
            .iter()
            .map(|o| {
                // `B` sorts before `R`, matching the canonical word
                least_rotation(&o.iter().map(|&i| c[i]).collect::<Vec<char>>()).into_iter().collect()
            })
            .collect()
    }

    pub fn order_histogram(&self) -> BTreeMap<Vec<usize>, usize> {
        let mut m = BTreeMap::new();
        for o in &self.orders {
            for x in o {
                *m.entry(x.clone()).or_insert(0) += 1;
            }
        }
        m
    }
}

/// Clockwise order of the points by floating angle, as a least rotation.
fn float_order(pts: &[(i64, i64)], s: (i64, i64)) -> Vec<usize> {
    let mut idx: Vec<(f64, usize)> = pts
        .iter()
        .enumerate()
        .map(|(i, p)| (-((p.1 - s.1) as f64).atan2((p.0 - s.0) as f64), i))
        .collect();
    idx.sort_by(|a, b| a.0.total_cmp(&b.0));
    least_rotation(&idx.into_iter().map(|x| x.1).collect::<Vec<usize>>())
}
