//! Integer homogeneous coordinates for the hot paths.
//!
//! A point `(x, y, w)` with `w > 0` stands for `(x/w, y/w)`; a line
//! `(a, b, c)` is the set `a*x + b*y + c*w = 0`. Joins, meets and side tests
//! are polynomial in the integer entries, so no gcd is ever taken. Signs
//! agree with the rational predicates because every `w` is positive.

use std::cmp::Ordering;

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::kernel::{Rational, RationalPoint};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HPoint {
    pub x: BigInt,
    pub y: BigInt,
    pub w: BigInt,
}

impl HPoint {
    pub fn from_rational(p: &RationalPoint) -> HPoint {
        let w = p.x.denom().lcm(p.y.denom());
        let x = p.x.numer() * (&w / p.x.denom());
        let y = p.y.numer() * (&w / p.y.denom());
        HPoint { x, y, w }
    }

    pub fn to_rational(&self) -> RationalPoint {
        RationalPoint::new(
            Rational::new(self.x.clone(), self.w.clone()),
            Rational::new(self.y.clone(), self.w.clone()),
        )
    }

    /// `(x, y, w)` scaled so that `w > 0`; `None` for points at infinity.
    pub fn normalized(x: BigInt, y: BigInt, w: BigInt) -> Option<HPoint> {
        match w.sign() {
            Sign::NoSign => None,
            Sign::Plus => Some(HPoint { x, y, w }),
            Sign::Minus => Some(HPoint { x: -x, y: -y, w: -w }),
        }
    }

    /// `other - self` scaled by the positive factor `self.w * other.w`.
    pub fn vector_to(&self, other: &HPoint) -> Vector {
        Vector {
            x: &other.x * &self.w - &self.x * &other.w,
            y: &other.y * &self.w - &self.y * &other.w,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HLine {
    pub a: BigInt,
    pub b: BigInt,
    pub c: BigInt,
}

impl HLine {
    pub fn eval(&self, p: &HPoint) -> BigInt {
        &self.a * &p.x + &self.b * &p.y + &self.c * &p.w
    }

    pub fn side(&self, p: &HPoint) -> Sign {
        self.eval(p).sign()
    }
}

/// Line through two points; `eval(q)` has the sign of `orient(p1, p2, q)`.
pub fn join(p: &HPoint, q: &HPoint) -> HLine {
    HLine {
        a: &p.y * &q.w - &p.w * &q.y,
        b: &p.w * &q.x - &p.x * &q.w,
        c: &p.x * &q.y - &p.y * &q.x,
    }
}

pub fn meet(l: &HLine, m: &HLine) -> Option<HPoint> {
    HPoint::normalized(
        &l.b * &m.c - &l.c * &m.b,
        &l.c * &m.a - &l.a * &m.c,
        &l.a * &m.b - &l.b * &m.a,
    )
}

/// Sign of the affine orientation determinant of `(q - p, r - p)`.
pub fn orient(p: &HPoint, q: &HPoint, r: &HPoint) -> Sign {
    join(p, q).eval(r).sign()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Vector {
    pub x: BigInt,
    pub y: BigInt,
}

impl Vector {
    pub fn new(x: BigInt, y: BigInt) -> Vector {
        Vector { x, y }
    }

    pub fn axis(dx: i64, dy: i64) -> Vector {
        Vector { x: BigInt::from(dx), y: BigInt::from(dy) }
    }

    pub fn neg(&self) -> Vector {
        Vector { x: -&self.x, y: -&self.y }
    }

    pub fn is_zero(&self) -> bool {
        self.x.is_zero() && self.y.is_zero()
    }

    pub fn cross(&self, o: &Vector) -> BigInt {
        &self.x * &o.y - &self.y * &o.x
    }
}

/// Counterclockwise angular order starting at direction `(1, 0)`.
pub fn ccw_angle_cmp(a: &Vector, b: &Vector) -> Ordering {
    let half = |v: &Vector| -> u8 {
        if v.y.is_positive() || (v.y.is_zero() && v.x.is_positive()) {
            0
        } else {
            1
        }
    };
    half(a).cmp(&half(b)).then_with(|| match a.cross(b).sign() {
        Sign::Plus => Ordering::Less,
        Sign::Minus => Ordering::Greater,
        Sign::NoSign => Ordering::Equal,
    })
}

/// Position `num/den` (with `den > 0`) along a directed line.
#[derive(Clone, Debug)]
pub struct Param {
    pub num: BigInt,
    pub den: BigInt,
}

impl Param {
    pub fn new(num: BigInt, den: BigInt) -> Option<Param> {
        match den.sign() {
            Sign::NoSign => None,
            Sign::Plus => Some(Param { num, den }),
            Sign::Minus => Some(Param { num: -num, den: -den }),
        }
    }

    pub fn zero() -> Param {
        Param { num: BigInt::zero(), den: BigInt::one() }
    }

    pub fn one() -> Param {
        Param { num: BigInt::one(), den: BigInt::one() }
    }

    pub fn from_rational(r: &Rational) -> Param {
        Param { num: r.numer().clone(), den: r.denom().clone() }
    }

    pub fn to_rational(&self) -> Rational {
        Rational::new(self.num.clone(), self.den.clone())
    }

    pub fn is_negative(&self) -> bool {
        self.num.is_negative()
    }

    /// Floating approximation with relative error below `2^-50`.
    pub fn approx(&self) -> f64 {
        fn mantissa(x: &BigInt) -> (f64, i64) {
            let bits = x.bits() as i64;
            let shift = (bits - 62).max(0);
            let top = x >> shift as usize;
            (top.to_i64().expect("62 bits fit") as f64, shift)
        }
        let (n, sn) = mantissa(&self.num);
        let (d, sd) = mantissa(&self.den);
        let e = (sn - sd).clamp(-1000, 1000) as i32;
        n / d * 2f64.powi(e)
    }

    /// Whether the value is strictly between 0 and 1.
    pub fn in_open_unit(&self) -> bool {
        self.num.is_positive() && self.num < self.den
    }

    pub fn midpoint(&self, o: &Param) -> Param {
        Param {
            num: &self.num * &o.den + &o.num * &self.den,
            den: &self.den * &o.den * BigInt::from(2),
        }
    }
}

impl PartialEq for Param {
    fn eq(&self, o: &Self) -> bool {
        self.cmp(o) == Ordering::Equal
    }
}

impl Eq for Param {}

impl PartialOrd for Param {
    fn partial_cmp(&self, o: &Self) -> Option<Ordering> {
        Some(self.cmp(o))
    }
}

impl Ord for Param {
    fn cmp(&self, o: &Self) -> Ordering {
        (&self.num * &o.den).cmp(&(&o.num * &self.den))
    }
}

/// Position along the line `p_from -> p_to` where it crosses `other`
/// (0 at `p_from`, 1 at `p_to`); `None` when parallel.
pub fn crossing_param(p_from: &HPoint, p_to: &HPoint, other: &HLine) -> Option<Param> {
    let da = other.eval(p_from) * &p_to.w;
    let db = other.eval(p_to) * &p_from.w;
    let den = &da - db;
    Param::new(da, den)
}
