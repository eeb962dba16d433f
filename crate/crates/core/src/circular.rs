//! Radial orderings as canonical circular sequences.

use std::cell::Cell;
use std::cmp::Ordering;
use std::fmt;

use num_bigint::Sign;
use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::hom::{HPoint, Vector};
use crate::kernel::{convex_hull, strictly_inside_clockwise, RationalPoint};
use crate::pointset::{Color, ColoredPointSet};

/// Start index of the lexicographically least rotation (two-pointer
/// minimum-expression algorithm, linear time).
pub fn least_rotation_index<T: Ord>(s: &[T]) -> usize {
    let n = s.len();
    let (mut i, mut j, mut k) = (0usize, 1usize, 0usize);
    while i < n && j < n && k < n {
        let a = &s[(i + k) % n];
        let b = &s[(j + k) % n];
        match a.cmp(b) {
            Ordering::Equal => {
                k += 1;
                continue;
            }
            Ordering::Greater => i += k + 1,
            Ordering::Less => j += k + 1,
        }
        if i == j {
            j += 1;
        }
        k = 0;
    }
    i.min(j)
}

/// Lexicographically least rotation and the offset it starts at.
pub fn canonical_rotation<T: Ord + Clone>(seq: &[T]) -> Result<(Vec<T>, usize)> {
    if seq.is_empty() {
        return Err(Error::EmptySequence);
    }
    let off = least_rotation_index(seq);
    let mut out = Vec::with_capacity(seq.len());
    out.extend_from_slice(&seq[off..]);
    out.extend_from_slice(&seq[..off]);
    Ok((out, off))
}

/// Clockwise circular order of point indices, stored as its least rotation.
/// Equality, hashing and ordering look at the stored sequence only.
#[derive(Clone, Debug)]
pub struct CircularOrder {
    sequence: Vec<usize>,
    offset: usize,
}

impl PartialEq for CircularOrder {
    fn eq(&self, o: &Self) -> bool {
        self.sequence == o.sequence
    }
}

impl Eq for CircularOrder {}

impl std::hash::Hash for CircularOrder {
    fn hash<H: std::hash::Hasher>(&self, h: &mut H) {
        self.sequence.hash(h);
    }
}

impl PartialOrd for CircularOrder {
    fn partial_cmp(&self, o: &Self) -> Option<Ordering> {
        Some(self.cmp(o))
    }
}

impl Ord for CircularOrder {
    fn cmp(&self, o: &Self) -> Ordering {
        self.sequence.cmp(&o.sequence)
    }
}

impl CircularOrder {
    pub fn from_sequence(raw: &[usize]) -> Result<CircularOrder> {
        let (sequence, offset) = canonical_rotation(raw)?;
        Ok(CircularOrder { sequence, offset })
    }

    pub fn sequence(&self) -> &[usize] {
        &self.sequence
    }

    /// Rotation that was applied to the raw sequence this order came from.
    pub fn canonical_rotation_offset(&self) -> usize {
        self.offset
    }

    pub fn len(&self) -> usize {
        self.sequence.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sequence.is_empty()
    }

    fn position(&self, x: usize) -> Option<usize> {
        self.sequence.iter().position(|&y| y == x)
    }

    /// Exchange `i` and `j` if they are circularly adjacent.
    pub fn apply_swap(&self, i: usize, j: usize) -> Option<CircularOrder> {
        let n = self.len();
        let (pi, pj) = (self.position(i)?, self.position(j)?);
        if n < 2 || i == j || ((pi + 1) % n != pj && (pj + 1) % n != pi) {
            return None;
        }
        let mut s = self.sequence.clone();
        s.swap(pi, pj);
        CircularOrder::from_sequence(&s).ok()
    }

    pub fn color_word(&self, s: &ColoredPointSet) -> Result<ColorWord> {
        color_word(self, s)
    }
}

impl fmt::Display for CircularOrder {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (k, x) in self.sequence.iter().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "{x}")?;
        }
        write!(f, "]")
    }
}

/// Circular word over {R, B}, stored as its least rotation.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ColorWord {
    word: Vec<Color>,
}

impl ColorWord {
    pub fn from_colors(raw: &[Color]) -> Result<ColorWord> {
        Ok(ColorWord { word: canonical_rotation(raw)?.0 })
    }

    pub fn word(&self) -> &[Color] {
        &self.word
    }

    pub fn len(&self) -> usize {
        self.word.len()
    }

    pub fn is_empty(&self) -> bool {
        self.word.is_empty()
    }
}

impl fmt::Display for ColorWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.word {
            write!(f, "{}", c.letter())?;
        }
        Ok(())
    }
}

pub fn color_word(order: &CircularOrder, s: &ColoredPointSet) -> Result<ColorWord> {
    let colors = s.colors().ok_or(Error::UncoloredSet)?;
    let raw: Vec<Color> = order.sequence.iter().map(|&i| colors[i]).collect();
    ColorWord::from_colors(&raw)
}

/// Clockwise angle order starting at direction `(0, 1)`.
fn clockwise_cmp(a: &Vector, b: &Vector, tie: &Cell<bool>) -> Ordering {
    // Right half (x > 0, or straight up) comes first.
    let half = |v: &Vector| -> u8 {
        if v.x.is_positive() || (v.x.is_zero() && v.y.is_positive()) {
            0
        } else {
            1
        }
    };
    half(a).cmp(&half(b)).then_with(|| match a.cross(b).sign() {
        Sign::Minus => Ordering::Less,
        Sign::Plus => Ordering::Greater,
        Sign::NoSign => {
            tie.set(true);
            Ordering::Equal
        }
    })
}

/// Clockwise order of directions starting at `(0, 1)`; `Equal` only for
/// parallel, same-sense vectors.
pub(crate) fn clockwise_direction_cmp(a: &Vector, b: &Vector) -> Ordering {
    clockwise_cmp(a, b, &Cell::new(false))
}

/// Raw clockwise sequence of indices around `obs`, with the observation
/// point contract checked exactly.
pub(crate) fn radial_sequence(points: &[HPoint], obs: &HPoint) -> Result<Vec<usize>> {
    sorted_around(points, obs, true)
}

fn sorted_around(points: &[HPoint], obs: &HPoint, reject_opposite: bool) -> Result<Vec<usize>> {
    let vecs: Vec<Vector> = points.iter().map(|p| obs.vector_to(p)).collect();
    if let Some(i) = vecs.iter().position(Vector::is_zero) {
        return Err(Error::NotObservationPoint(format!("coincides with point {i}")));
    }
    let tie = Cell::new(false);
    let mut idx: Vec<usize> = (0..points.len()).collect();
    idx.sort_by(|&a, &b| clockwise_cmp(&vecs[a], &vecs[b], &tie));
    if tie.get() {
        return Err(Error::NotObservationPoint("two points at the same angle".into()));
    }
    if !reject_opposite {
        return Ok(idx);
    }
    // Opposite directions are also collinear with the observer: negate the
    // second half and merge it against the first.
    let split = idx.partition_point(|&i| vecs[i].x.is_positive() || (vecs[i].x.is_zero() && vecs[i].y.is_positive()));
    let (first, second) = idx.split_at(split);
    let flipped: Vec<Vector> = second.iter().map(|&i| vecs[i].neg()).collect();
    let (mut a, mut b) = (0, 0);
    while a < first.len() && b < flipped.len() {
        match vecs[first[a]].cross(&flipped[b]).sign() {
            Sign::Minus => a += 1,
            Sign::Plus => b += 1,
            Sign::NoSign => {
                return Err(Error::NotObservationPoint(format!(
                    "collinear with points {} and {}",
                    first[a], second[b]
                )))
            }
        }
    }
    Ok(idx)
}

pub fn radial_order(s: &ColoredPointSet, obs: &RationalPoint) -> Result<CircularOrder> {
    let pts = s.homogeneous();
    radial_order_h(&pts, &HPoint::from_rational(obs))
}

pub(crate) fn radial_order_h(points: &[HPoint], obs: &HPoint) -> Result<CircularOrder> {
    CircularOrder::from_sequence(&radial_sequence(points, obs)?)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TranspositionDiff {
    Same,
    /// The exchanged pair, smaller index first.
    Swap(usize, usize),
    Other,
}

/// Whether `b` is `a` with one circularly adjacent pair exchanged. For
/// three elements every adjacent swap gives the same order, so the first
/// matching pair is reported.
pub fn adjacent_transposition_diff(a: &CircularOrder, b: &CircularOrder) -> Result<TranspositionDiff> {
    let mut sa = a.sequence.clone();
    let mut sb = b.sequence.clone();
    sa.sort_unstable();
    sb.sort_unstable();
    if sa != sb {
        return Err(Error::MismatchedIndexSets);
    }
    if a == b {
        return Ok(TranspositionDiff::Same);
    }
    let n = a.len();
    let max = *sa.last().expect("nonempty");
    let mut succ_b = vec![usize::MAX; max + 1];
    for k in 0..n {
        succ_b[b.sequence[k]] = b.sequence[(k + 1) % n];
    }
    let mismatched = (0..n)
        .filter(|&k| succ_b[a.sequence[k]] != a.sequence[(k + 1) % n])
        .count();
    if mismatched > 3 {
        return Ok(TranspositionDiff::Other);
    }
    for k in 0..n {
        let (x, y) = (a.sequence[k], a.sequence[(k + 1) % n]);
        if a.apply_swap(x, y).as_ref() == Some(b) {
            return Ok(TranspositionDiff::Swap(x.min(y), x.max(y)));
        }
    }
    Ok(TranspositionDiff::Other)
}

/// Radial order around an interior observation point, read as a polygon.
pub fn star_polygonization(s: &ColoredPointSet, obs: &RationalPoint) -> Result<Vec<usize>> {
    let hull = convex_hull(s.points())?;
    let poly: Vec<RationalPoint> = hull.iter().map(|&i| s.points()[i].clone()).collect();
    if !strictly_inside_clockwise(&poly, obs) {
        return Err(Error::NotInteriorPoint);
    }
    // Two vertices on opposite sides of `obs` still give a simple polygon;
    // only equal angles are fatal here.
    let pts = s.homogeneous();
    sorted_around(&pts, &HPoint::from_rational(obs), false)
}
