//! Exact rational geometry: points, lines and the orientation predicate.
//!
//! Everything here is exact. Nothing is ever rounded, so every zero test
//! (collinearity, concurrency, coincidence) is decided correctly.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Arbitrary-precision rational, always stored in lowest terms with a
/// positive denominator.
pub type Rational = num_rational::BigRational;

pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Formats as `numerator/denominator`, always including the denominator.
pub fn format_rational(r: &Rational) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

/// Accepts `n/d` or a bare integer `n`.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let s = s.trim();
    let bad = || Error::Parse(format!("malformed rational {s:?}"));
    match s.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().map_err(|_| bad())?;
            let d: BigInt = d.trim().parse().map_err(|_| bad())?;
            if d.is_zero() {
                return Err(Error::Parse(format!("zero denominator in {s:?}")));
            }
            Ok(Rational::new(n, d))
        }
        None => {
            let n: BigInt = s.parse().map_err(|_| bad())?;
            Ok(Rational::from_integer(n))
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RationalPoint {
    pub x: Rational,
    pub y: Rational,
}

impl RationalPoint {
    pub fn new(x: Rational, y: Rational) -> Self {
        RationalPoint { x, y }
    }

    pub fn from_ints(x: i64, y: i64) -> Self {
        RationalPoint::new(int(x), int(y))
    }

    pub fn sub(&self, other: &RationalPoint) -> (Rational, Rational) {
        (&self.x - &other.x, &self.y - &other.y)
    }

    pub fn translate(&self, dx: &Rational, dy: &Rational) -> RationalPoint {
        RationalPoint::new(&self.x + dx, &self.y + dy)
    }

    pub fn scale_about_origin(&self, k: &Rational) -> RationalPoint {
        RationalPoint::new(&self.x * k, &self.y * k)
    }

    pub fn dist2(&self, other: &RationalPoint) -> Rational {
        let (dx, dy) = self.sub(other);
        &dx * &dx + &dy * &dy
    }

    /// Lossy conversion, for rendering only.
    pub fn to_f64(&self) -> (f64, f64) {
        use num_traits::ToPrimitive;
        (
            self.x.to_f64().unwrap_or(f64::NAN),
            self.y.to_f64().unwrap_or(f64::NAN),
        )
    }
}

impl fmt::Display for RationalPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.x, self.y)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Orientation {
    Clockwise,
    Counterclockwise,
    Collinear,
}

impl Orientation {
    pub fn from_sign(v: &Rational) -> Self {
        match v.cmp(&Rational::zero()) {
            Ordering::Less => Orientation::Clockwise,
            Ordering::Greater => Orientation::Counterclockwise,
            Ordering::Equal => Orientation::Collinear,
        }
    }

    pub fn reversed(self) -> Self {
        match self {
            Orientation::Clockwise => Orientation::Counterclockwise,
            Orientation::Counterclockwise => Orientation::Clockwise,
            Orientation::Collinear => Orientation::Collinear,
        }
    }
}

pub fn orientation_det(p: &RationalPoint, q: &RationalPoint, r: &RationalPoint) -> Rational {
    let (ax, ay) = q.sub(p);
    let (bx, by) = r.sub(p);
    ax * by - ay * bx
}

/// Sign of the determinant of `(q - p, r - p)`.
pub fn orientation(p: &RationalPoint, q: &RationalPoint, r: &RationalPoint) -> Orientation {
    Orientation::from_sign(&orientation_det(p, q, r))
}

/// The line `a*x + b*y = c`, scaled to coprime integers with the first
/// nonzero of `(a, b)` positive. Equal lines compare and hash equal.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Line {
    pub a: Rational,
    pub b: Rational,
    pub c: Rational,
}

impl Line {
    pub fn new(a: Rational, b: Rational, c: Rational) -> Result<Line> {
        if a.is_zero() && b.is_zero() {
            return Err(Error::DegenerateInput("line with a = b = 0".into()));
        }
        let lcm = a.denom().lcm(b.denom()).lcm(c.denom());
        let mut ia = a.numer() * (&lcm / a.denom());
        let mut ib = b.numer() * (&lcm / b.denom());
        let mut ic = c.numer() * (&lcm / c.denom());
        let g = ia.gcd(&ib).gcd(&ic);
        ia /= &g;
        ib /= &g;
        ic /= &g;
        let flip = if ia.is_zero() { ib.is_negative() } else { ia.is_negative() };
        if flip {
            ia = -ia;
            ib = -ib;
            ic = -ic;
        }
        Ok(Line {
            a: Rational::from_integer(ia),
            b: Rational::from_integer(ib),
            c: Rational::from_integer(ic),
        })
    }

    /// `a*x + b*y - c`; zero exactly on the line.
    pub fn eval(&self, p: &RationalPoint) -> Rational {
        &self.a * &p.x + &self.b * &p.y - &self.c
    }

    pub fn contains(&self, p: &RationalPoint) -> bool {
        self.eval(p).is_zero()
    }

    /// Squared Euclidean distance from `p` to the line.
    pub fn dist2(&self, p: &RationalPoint) -> Rational {
        let v = self.eval(p);
        &v * &v / (&self.a * &self.a + &self.b * &self.b)
    }
}

impl fmt::Display for Line {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}x + {}y = {}", self.a, self.b, self.c)
    }
}

pub fn line_through(p: &RationalPoint, q: &RationalPoint) -> Result<Line> {
    if p == q {
        return Err(Error::IdenticalPoints);
    }
    let a = &q.y - &p.y;
    let b = &p.x - &q.x;
    let c = &a * &p.x + &b * &p.y;
    Line::new(a, b, c)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Intersection {
    Point(RationalPoint),
    Parallel,
    Identical,
}

pub fn line_intersection(l1: &Line, l2: &Line) -> Intersection {
    let det = &l1.a * &l2.b - &l2.a * &l1.b;
    if det.is_zero() {
        return if l1 == l2 { Intersection::Identical } else { Intersection::Parallel };
    }
    let x = (&l1.c * &l2.b - &l2.c * &l1.b) / &det;
    let y = (&l1.a * &l2.c - &l2.a * &l1.c) / &det;
    Intersection::Point(RationalPoint::new(x, y))
}

/// Point at tangent half-angle parameter `t` on the origin-centred circle of
/// the given radius: `radius * ((1 - t^2) / (1 + t^2), 2t / (1 + t^2))`.
pub fn circle_point(t: &Rational, radius: &Rational) -> RationalPoint {
    let t2 = t * t;
    let one = Rational::one();
    let den = &one + &t2;
    let x = (&one - &t2) / &den * radius;
    let y = (t * Rational::from_integer(BigInt::from(2))) / &den * radius;
    RationalPoint::new(x, y)
}

/// Convex hull vertices in clockwise order, starting from the
/// lexicographically smallest point. Requires no three collinear points.
pub fn convex_hull(points: &[RationalPoint]) -> Result<Vec<usize>> {
    if points.len() < 3 {
        return Err(Error::DegenerateInput(format!(
            "convex hull needs at least 3 points, got {}",
            points.len()
        )));
    }
    let mut idx: Vec<usize> = (0..points.len()).collect();
    idx.sort_by(|&a, &b| points[a].cmp(&points[b]));

    // Monotone chain; keeps strictly clockwise turns on both chains.
    let mut upper: Vec<usize> = Vec::new();
    for &i in &idx {
        while upper.len() >= 2
            && orientation(
                &points[upper[upper.len() - 2]],
                &points[upper[upper.len() - 1]],
                &points[i],
            ) != Orientation::Clockwise
        {
            upper.pop();
        }
        upper.push(i);
    }
    let mut lower: Vec<usize> = Vec::new();
    for &i in idx.iter().rev() {
        while lower.len() >= 2
            && orientation(
                &points[lower[lower.len() - 2]],
                &points[lower[lower.len() - 1]],
                &points[i],
            ) != Orientation::Clockwise
        {
            lower.pop();
        }
        lower.push(i);
    }
    upper.pop();
    lower.pop();
    upper.extend(lower);
    if upper.len() < 3 {
        return Err(Error::DegenerateInput("all points collinear".into()));
    }
    Ok(upper)
}

/// Strictly inside a clockwise convex polygon (boundary excluded).
pub fn strictly_inside_clockwise(polygon: &[RationalPoint], q: &RationalPoint) -> bool {
    let k = polygon.len();
    (0..k).all(|i| orientation(&polygon[i], &polygon[(i + 1) % k], q) == Orientation::Clockwise)
}

/// Whether closed segments `ab` and `cd` share a point.
pub fn segments_intersect(
    a: &RationalPoint,
    b: &RationalPoint,
    c: &RationalPoint,
    d: &RationalPoint,
) -> bool {
    let o1 = orientation(a, b, c);
    let o2 = orientation(a, b, d);
    let o3 = orientation(c, d, a);
    let o4 = orientation(c, d, b);
    if o1 != o2
        && o3 != o4
        && o1 != Orientation::Collinear
        && o2 != Orientation::Collinear
        && o3 != Orientation::Collinear
        && o4 != Orientation::Collinear
    {
        return true;
    }
    let on = |p: &RationalPoint, q: &RationalPoint, r: &RationalPoint| {
        orientation(p, q, r) == Orientation::Collinear
            && r.x >= p.x.clone().min(q.x.clone())
            && r.x <= p.x.clone().max(q.x.clone())
            && r.y >= p.y.clone().min(q.y.clone())
            && r.y <= p.y.clone().max(q.y.clone())
    };
    on(a, b, c) || on(a, b, d) || on(c, d, a) || on(c, d, b)
}
