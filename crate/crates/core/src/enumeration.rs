//! Counting radial orderings over the order partition, the walk around a
//! point, and growth experiments over the constructions.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Write as _;

use num_bigint::{BigInt, Sign};
use num_traits::{One, Signed, Zero};
use rayon::prelude::*;

use crate::arrangement::{
    build_arrangement, build_order_partition, check_budget, classify_edges,
    interior_face_representatives, Arrangement, EdgeKind, FaceId, OrderPartition,
};
use crate::circular::{clockwise_direction_cmp, color_word, radial_order_h, CircularOrder, ColorWord};
use crate::constructions::{self, ColorScheme};
use crate::error::{Error, Result};
use crate::hom::{crossing_param, join, HPoint, Vector};
use crate::kernel::{circle_point, Rational, RationalPoint};
use crate::pointset::{validate_strong_general_position, ColoredPointSet, Validation, Violation};

/// Arrangement, partition and the radial order at every inner face.
#[derive(Clone, Debug)]
pub struct Analysis {
    pub arrangement: Arrangement,
    pub kinds: Vec<EdgeKind>,
    pub partition: OrderPartition,
    /// Indexed by face id; `None` for the outer face.
    pub face_orders: Vec<Option<CircularOrder>>,
}

impl Analysis {
    pub fn new(s: &ColoredPointSet) -> Result<Analysis> {
        let arrangement = build_arrangement(s)?;
        let kinds = classify_edges(&arrangement);
        let partition = build_order_partition(&arrangement, &kinds);
        let hp = arrangement.hpoints();
        let face_orders = arrangement
            .faces()
            .par_iter()
            .map(|f| {
                f.representative
                    .as_ref()
                    .map(|r| radial_order_h(hp, &HPoint::from_rational(r)))
                    .transpose()
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Analysis { arrangement, kinds, partition, face_orders })
    }

    /// Order cell containing `p`, if `p` is on no spanned line.
    pub fn cell_at(&self, p: &RationalPoint) -> Option<usize> {
        self.arrangement.locate(p).and_then(|f| self.partition.cell_of(f))
    }

    /// Order of each cell, taken at its first face.
    pub fn cell_orders(&self) -> Vec<CircularOrder> {
        let mut out: Vec<Option<CircularOrder>> = vec![None; self.partition.cell_count()];
        for (f, c) in self.partition.face_to_cell().iter().enumerate() {
            if let Some(c) = c {
                if out[*c].is_none() {
                    out[*c] = self.face_orders[f].clone();
                }
            }
        }
        out.into_iter().map(|o| o.expect("every cell has a face")).collect()
    }
}

#[derive(Clone, Debug)]
pub struct OrderingCensus {
    pub rho: usize,
    /// `None` for uncolored sets.
    pub rho_colored: Option<usize>,
    /// Canonical order of every order cell, indexed by cell id.
    pub per_cell: Vec<CircularOrder>,
    /// Number of order cells realizing each ordering.
    pub class_sizes: BTreeMap<CircularOrder, usize>,
    pub colored_class_sizes: Option<BTreeMap<ColorWord, usize>>,
    pub order_cells: usize,
    /// Faces of the clipped subdivision, outer face included.
    pub faces: usize,
}

impl OrderingCensus {
    pub fn from_analysis(a: &Analysis, s: &ColoredPointSet) -> Result<OrderingCensus> {
        let per_cell = a.cell_orders();
        let mut class_sizes = BTreeMap::new();
        for o in &per_cell {
            *class_sizes.entry(o.clone()).or_insert(0) += 1;
        }
        let colored_class_sizes = match s.colors() {
            None => None,
            Some(_) => {
                let mut m = BTreeMap::new();
                for o in &per_cell {
                    *m.entry(color_word(o, s)?).or_insert(0) += 1;
                }
                Some(m)
            }
        };
        Ok(OrderingCensus {
            rho: class_sizes.len(),
            rho_colored: colored_class_sizes.as_ref().map(BTreeMap::len),
            per_cell,
            class_sizes,
            colored_class_sizes,
            order_cells: a.partition.cell_count(),
            faces: a.arrangement.face_count(),
        })
    }

    pub fn contains(&self, o: &CircularOrder) -> bool {
        self.class_sizes.contains_key(o)
    }

    pub fn contains_word(&self, w: &ColorWord) -> bool {
        self.colored_class_sizes.as_ref().is_some_and(|m| m.contains_key(w))
    }
}

pub fn census(s: &ColoredPointSet) -> Result<OrderingCensus> {
    OrderingCensus::from_analysis(&Analysis::new(s)?, s)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum DistinctnessReport {
    Pass { interior_cells: usize },
    CounterexamplePair {
        cells: (usize, usize),
        points: (RationalPoint, RationalPoint),
        order: CircularOrder,
    },
    ValidationRequired(Violation),
}

/// Order cells meeting the hull interior must carry pairwise distinct
/// orders.
pub fn interior_distinctness_check(s: &ColoredPointSet) -> Result<DistinctnessReport> {
    if let Validation::Violation(v) = validate_strong_general_position(s) {
        return Ok(DistinctnessReport::ValidationRequired(v));
    }
    Ok(interior_distinctness(&Analysis::new(s)?)?)
}

pub fn interior_distinctness(a: &Analysis) -> Result<DistinctnessReport> {
    let mut by_cell: BTreeMap<usize, (FaceId, RationalPoint)> = BTreeMap::new();
    for (f, rep) in interior_face_representatives(&a.arrangement)? {
        let cell = a.partition.cell_of(f).expect("inner face");
        by_cell.entry(cell).or_insert((f, rep));
    }
    let mut seen: BTreeMap<&CircularOrder, (usize, &RationalPoint)> = BTreeMap::new();
    for (&cell, (f, rep)) in &by_cell {
        let order = a.face_orders[*f].as_ref().expect("inner face");
        if let Some(&(other, other_rep)) = seen.get(order) {
            return Ok(DistinctnessReport::CounterexamplePair {
                cells: (other, cell),
                points: (other_rep.clone(), rep.clone()),
                order: order.clone(),
            });
        }
        seen.insert(order, (cell, rep));
    }
    Ok(DistinctnessReport::Pass { interior_cells: by_cell.len() })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LemmaCheck {
    Applicable { distinct: bool },
    NotApplicable,
}

/// Whether some half-line spanned by `x1, x2` (either ray outside the open
/// segment) meets the closed segment `pq`.
pub fn half_lines_meet_segment(x1: &HPoint, x2: &HPoint, p: &HPoint, q: &HPoint) -> bool {
    let l = join(x1, x2);
    let (sp, sq) = (l.side(p), l.side(q));
    if sp == sq && sp != Sign::NoSign {
        return false;
    }
    if sp == Sign::NoSign || sq == Sign::NoSign {
        // an endpoint on the line itself; the hypothesis cannot be certified
        return true;
    }
    let t = crossing_param(x1, x2, &join(p, q)).expect("p and q are on opposite sides");
    !t.in_open_unit()
}

/// Tests the hypothesis that no half-line spanned by a point of `part_r`
/// and a point outside it meets segment `pq`; when it holds, reports
/// whether the orders at `p` and `q` differ.
pub fn partition_lemma_check(
    a: &Analysis,
    part_r: &[usize],
    p: &RationalPoint,
    q: &RationalPoint,
) -> Result<LemmaCheck> {
    let (Some(cp), Some(cq)) = (a.cell_at(p), a.cell_at(q)) else {
        return Err(Error::NotObservationPoint("p or q lies on a spanned line".into()));
    };
    if cp == cq {
        return Ok(LemmaCheck::NotApplicable);
    }
    let hp = a.arrangement.hpoints();
    let n = hp.len();
    let in_r: BTreeSet<usize> = part_r.iter().copied().collect();
    let (p_h, q_h) = (HPoint::from_rational(p), HPoint::from_rational(q));
    for i in in_r.iter().copied() {
        for j in (0..n).filter(|j| !in_r.contains(j)) {
            if half_lines_meet_segment(&hp[i], &hp[j], &p_h, &q_h) {
                return Ok(LemmaCheck::NotApplicable);
            }
        }
    }
    let op = radial_order_h(hp, &p_h)?;
    let oq = radial_order_h(hp, &q_h)?;
    Ok(LemmaCheck::Applicable { distinct: op != oq })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WalkEvent {
    /// Interval the walk leaves at this event; it enters `interval + 1`
    /// (cyclically).
    pub interval: usize,
    /// The half-line crossed starts at the center and points away from
    /// this point.
    pub partner: usize,
    /// Direction of the half-line from the center.
    pub direction: Vector,
}

#[derive(Clone, Debug)]
pub struct WalkTrace {
    pub center: usize,
    pub radius: Rational,
    pub events: Vec<WalkEvent>,
    /// One observation point per interval, on the walk circle.
    pub observation_points: Vec<RationalPoint>,
    pub orders_seen: Vec<CircularOrder>,
    /// `None` for uncolored sets.
    pub words_seen: Option<Vec<ColorWord>>,
}

impl WalkTrace {
    pub fn distinct_words(&self) -> usize {
        self.words_seen
            .as_ref()
            .map_or(0, |w| w.iter().collect::<BTreeSet<_>>().len())
    }

    /// Applies every event's transposition to the first order.
    pub fn compose_events(&self) -> Option<CircularOrder> {
        let mut o = self.orders_seen.first()?.clone();
        for e in &self.events {
            o = o.apply_swap(self.center, e.partner)?;
        }
        Some(o)
    }
}

/// Strictly inside the clockwise wedge from `a` to `b` (angle at most pi).
fn in_wedge(a: &Vector, w: &Vector, b: &Vector) -> bool {
    a.cross(w).is_negative() && w.cross(b).is_negative()
}

/// A rational point of the unit circle whose direction lies strictly in the
/// wedge from `a` to `b`, near the direction `v` that bisects it. Uses the
/// half-angle parameter of `v` with `|v|` approximated by integer square
/// roots of increasing precision.
fn circle_direction_in_wedge(a: &Vector, v: &Vector, b: &Vector) -> RationalPoint {
    let one = Rational::one();
    let norm2: BigInt = &v.x * &v.x + &v.y * &v.y;
    for k in (8u32..).step_by(8) {
        let scale = BigInt::one() << k;
        let s = Rational::new((&norm2 * &scale * &scale).sqrt(), scale);
        let x = Rational::from_integer(v.x.clone());
        let y = Rational::from_integer(v.y.clone());
        // tan(theta/2) = y / (|v| + x) = (|v| - x) / y
        let t = if !v.x.is_negative() {
            y / (s + x)
        } else {
            (s - x) / y
        };
        let c = circle_point(&t, &one);
        let w = Vector::new(
            (c.x.numer() * c.y.denom()).clone(),
            (c.y.numer() * c.x.denom()).clone(),
        );
        if in_wedge(a, &w, b) {
            return c;
        }
    }
    unreachable!("precision grows without bound")
}

/// Walks once clockwise around a small circle centered at point `center`,
/// crossing only the half-lines that start at the center.
pub fn walk_around(s: &ColoredPointSet, center: usize) -> Result<WalkTrace> {
    let n = s.len();
    if center >= n {
        return Err(Error::InvalidParameter(format!("center {center} out of range for {n} points")));
    }
    if n < 2 {
        return Err(Error::TooFewPoints(n));
    }
    let pts = s.points();
    let hp = s.homogeneous();
    let o = &pts[center];

    // r^2 below a quarter of every squared distance to another point and
    // below the squared distance to every line avoiding the center.
    let mut bound: Option<Rational> = None;
    let mut lower = |v: Rational| {
        if bound.as_ref().is_none_or(|b| v < *b) {
            bound = Some(v);
        }
    };
    for (k, p) in pts.iter().enumerate() {
        if k != center {
            lower(o.dist2(p) / Rational::from_integer(4.into()));
        }
    }
    for i in (0..n).filter(|&i| i != center) {
        for j in (i + 1..n).filter(|&j| j != center) {
            let (dx, dy) = pts[j].sub(&pts[i]);
            let (ox, oy) = o.sub(&pts[i]);
            let cross = &dx * &oy - &dy * &ox;
            lower(&cross * &cross / (&dx * &dx + &dy * &dy));
        }
    }
    let bound = bound.expect("at least one other point");
    let mut radius = Rational::one();
    while &radius * &radius >= bound {
        radius /= Rational::from_integer(2.into());
    }

    let others: Vec<usize> = (0..n).filter(|&k| k != center).collect();
    let u: Vec<Vector> = others.iter().map(|&k| hp[center].vector_to(&hp[k])).collect();
    // every direction where the circle meets a line through the center:
    // toward the partner (segment) or away from it (half-line)
    let mut dirs: Vec<(Vector, Option<usize>)> = Vec::with_capacity(2 * others.len());
    for (idx, &k) in others.iter().enumerate() {
        dirs.push((u[idx].clone(), None));
        dirs.push((u[idx].neg(), Some(k)));
    }
    dirs.sort_by(|a, b| clockwise_direction_cmp(&a.0, &b.0));
    let first_event = dirs.iter().position(|d| d.1.is_some()).expect("an event exists");
    dirs.rotate_left(first_event);

    let m = dirs.len();
    let mut events = Vec::new();
    let mut observation_points = Vec::new();
    for k in 0..m {
        let Some(partner) = dirs[k].1 else { continue };
        let a = &dirs[k].0;
        let b = &dirs[(k + 1) % m].0;
        let bis = if a.cross(b).is_zero() {
            // opposite directions: turn a quarter clockwise from `a`
            Vector::new(a.y.clone(), -&a.x)
        } else {
            Vector::new(&a.x + &b.x, &a.y + &b.y)
        };
        let c = circle_direction_in_wedge(a, &bis, b);
        observation_points.push(RationalPoint::new(&o.x + &radius * &c.x, &o.y + &radius * &c.y));
        events.push((partner, a.clone()));
    }
    // interval i starts after event i; event i+1 ends it
    let count = events.len();
    let events: Vec<WalkEvent> = (0..count)
        .map(|i| {
            let (partner, direction) = events[(i + 1) % count].clone();
            WalkEvent { interval: i, partner, direction }
        })
        .collect();
    let orders_seen = observation_points
        .iter()
        .map(|q| radial_order_h(&hp, &HPoint::from_rational(q)))
        .collect::<Result<Vec<_>>>()?;
    let words_seen = match s.colors() {
        None => None,
        Some(_) => Some(orders_seen.iter().map(|o| color_word(o, s)).collect::<Result<Vec<_>>>()?),
    };
    Ok(WalkTrace { center, radius, events, observation_points, orders_seen, words_seen })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ExperimentKind {
    Random,
    Lower4,
    Upper2,
}

impl ExperimentKind {
    pub fn name(self) -> &'static str {
        match self {
            ExperimentKind::Random => "random",
            ExperimentKind::Lower4 => "lower4",
            ExperimentKind::Upper2 => "upper2",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExperimentRow {
    pub size: usize,
    pub rho: usize,
    pub rho_colored: Option<usize>,
    pub order_cells: usize,
    pub faces: usize,
    /// Distinct color words at the designated points (four-pattern only).
    pub designated_distinct: Option<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExperimentTable {
    pub kind: ExperimentKind,
    pub rows: Vec<ExperimentRow>,
}

impl ExperimentTable {
    pub fn to_csv(&self) -> String {
        let designated = self.kind == ExperimentKind::Lower4;
        let mut out = String::from("size,rho,rho_colored,order_cells,F");
        if designated {
            out.push_str(",designated_distinct");
        }
        out.push('\n');
        for r in &self.rows {
            let rc = r.rho_colored.map(|v| v.to_string()).unwrap_or_default();
            let _ = write!(out, "{},{},{},{},{}", r.size, r.rho, rc, r.order_cells, r.faces);
            if designated {
                let d = r.designated_distinct.map(|v| v.to_string()).unwrap_or_default();
                let _ = write!(out, ",{d}");
            }
            out.push('\n');
        }
        out
    }
}

/// One census row per size. For `Random` the size is the point count; for
/// the constructions it is their `n` parameter (the sets have `2n` points).
pub fn growth_experiment(
    kind: ExperimentKind,
    sizes: &[usize],
    seed: u64,
    budget: u128,
) -> Result<ExperimentTable> {
    let mut rows = Vec::with_capacity(sizes.len());
    for &size in sizes {
        let points = match kind {
            ExperimentKind::Random => size,
            _ => 2 * size,
        };
        check_budget(points, budget)?;
        let (set, designated) = match kind {
            ExperimentKind::Random => {
                (constructions::gen_random_sgp(size, ColorScheme::Alternating, seed)?, None)
            }
            ExperimentKind::Upper2 => (constructions::gen_circle_pattern(size, seed)?.set, None),
            ExperimentKind::Lower4 => {
                let fp = constructions::gen_four_pattern(size, seed)?;
                let hp = fp.set.homogeneous();
                let words = fp
                    .q_points
                    .iter()
                    .map(|q| color_word(&radial_order_h(&hp, &HPoint::from_rational(q))?, &fp.set))
                    .collect::<Result<BTreeSet<_>>>()?;
                (fp.set, Some(words.len()))
            }
        };
        let c = census(&set)?;
        rows.push(ExperimentRow {
            size,
            rho: c.rho,
            rho_colored: c.rho_colored,
            order_cells: c.order_cells,
            faces: c.faces,
            designated_distinct: designated,
        });
    }
    Ok(ExperimentTable { kind, rows })
}
