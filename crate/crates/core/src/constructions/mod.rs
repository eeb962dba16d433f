//! Point-set generators: random sets in strong general position, convex
//! sets, and the two bicolored extremal constructions.

mod circle_pattern;
mod four_pattern;

pub use circle_pattern::{gen_circle_pattern, gen_circle_pattern_with, CirclePattern, CirclePatternParams};
pub use four_pattern::{
    gen_four_pattern, patterns_consecutive, verify_four_pattern_conditions, ConditionReport,
    FourPattern, FourPatternParams, PatternKind,
};

use num_bigint::BigInt;
use num_traits::One;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::kernel::{circle_point, Rational, RationalPoint};
use crate::pointset::{validate_homogeneous, Color, ColoredPointSet, Violation};

/// Parameter halvings allowed before a construction gives up.
pub const RETRY_BUDGET: usize = 64;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ColorScheme {
    None,
    /// `n/2` red and `n/2` blue at random positions; needs `n % 4 == 0`.
    Balanced,
    /// Red at even indices, blue at odd ones.
    Alternating,
}

#[derive(Clone, Copy, Debug)]
pub struct RandomParams {
    /// Coordinates are integers in `0..grid`.
    pub grid: i64,
    /// Resampled points allowed before giving up.
    pub retries: usize,
}

impl Default for RandomParams {
    fn default() -> Self {
        RandomParams { grid: 1 << 12, retries: 10_000 }
    }
}

pub(crate) fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn apply_colors(n: usize, scheme: ColorScheme, rng: &mut ChaCha8Rng) -> Result<Option<Vec<Color>>> {
    match scheme {
        ColorScheme::None => Ok(None),
        ColorScheme::Alternating => {
            Ok(Some((0..n).map(|i| if i % 2 == 0 { Color::Red } else { Color::Blue }).collect()))
        }
        ColorScheme::Balanced => {
            if n % 4 != 0 {
                return Err(Error::InvalidParameter(format!(
                    "a balanced coloring needs an even count per color, got n = {n}"
                )));
            }
            let mut c: Vec<Color> =
                (0..n).map(|i| if i < n / 2 { Color::Red } else { Color::Blue }).collect();
            c.shuffle(rng);
            Ok(Some(c))
        }
    }
}

/// Point of the largest index taking part in a violation; resampling it is
/// enough to make progress.
fn culprit(v: &Violation) -> usize {
    match v {
        Violation::CollinearPoints(t) => *t.iter().max().expect("three points"),
        Violation::ConcurrentLines { lines, .. } => {
            lines.iter().map(|&(a, b)| a.max(b)).max().expect("three lines")
        }
    }
}

/// Resamples offending points until the set is in strong general position.
fn resample_until_valid(
    mut points: Vec<RationalPoint>,
    retries: usize,
    mut fresh: impl FnMut(usize) -> RationalPoint,
) -> Result<Vec<RationalPoint>> {
    for _ in 0..=retries {
        let mut sorted = points.clone();
        sorted.sort();
        if let Some(w) = sorted.windows(2).find(|w| w[0] == w[1]) {
            let dup = points.iter().rposition(|p| *p == w[0]).expect("present");
            points[dup] = fresh(dup);
            continue;
        }
        let hp: Vec<_> = points.iter().map(crate::hom::HPoint::from_rational).collect();
        match validate_homogeneous(&hp) {
            None => return Ok(points),
            Some(v) => {
                let k = culprit(&v);
                points[k] = fresh(k);
            }
        }
    }
    Err(Error::RetryExhausted(format!("no valid set after {retries} resamples")))
}

pub fn gen_random_sgp(n: usize, colors: ColorScheme, seed: u64) -> Result<ColoredPointSet> {
    gen_random_sgp_with(n, colors, seed, &RandomParams::default())
}

pub fn gen_random_sgp_with(
    n: usize,
    colors: ColorScheme,
    seed: u64,
    params: &RandomParams,
) -> Result<ColoredPointSet> {
    if n < 3 {
        return Err(Error::TooFewPoints(n));
    }
    if params.grid < 2 {
        return Err(Error::InvalidParameter("grid must be at least 2".into()));
    }
    let mut rng = rng(seed);
    let coloring = apply_colors(n, colors, &mut rng)?;
    let grid = params.grid;
    let mut draw = move |_: usize| {
        RationalPoint::from_ints(rng.gen_range(0..grid), rng.gen_range(0..grid))
    };
    let initial: Vec<RationalPoint> = (0..n).map(&mut draw).collect();
    let points = resample_until_valid(initial, params.retries, draw)?;
    ColoredPointSet::new(points, coloring)
}

/// Points on the unit circle at random dyadic half-angle parameters.
pub fn gen_convex(n: usize, colors: ColorScheme, seed: u64) -> Result<ColoredPointSet> {
    if n < 3 {
        return Err(Error::TooFewPoints(n));
    }
    let mut rng = rng(seed);
    let coloring = apply_colors(n, colors, &mut rng)?;
    let one = Rational::one();
    let scale = BigInt::from(1u32 << 12);
    let mut draw = move |_: usize| {
        let t = Rational::new(BigInt::from(rng.gen_range(-(1i64 << 14)..(1i64 << 14))), scale.clone());
        circle_point(&t, &one)
    };
    let initial: Vec<RationalPoint> = (0..n).map(&mut draw).collect();
    let points = resample_until_valid(initial, RandomParams::default().retries, draw)?;
    ColoredPointSet::new(points, coloring)
}

/// Nearest multiple of `2^-bits`; used only to pick construction
/// parameters, never in a predicate.
pub(crate) fn dyadic(x: f64, bits: u32) -> Rational {
    let scale = (1u64 << bits) as f64;
    Rational::new(BigInt::from((x * scale).round() as i64), BigInt::from(1u64 << bits))
}

/// Nearest multiple of `2^-bits`. Construction parameters are snapped so
/// that coordinates keep short denominators.
pub(crate) fn snap(t: &Rational, bits: u32) -> Rational {
    let scale = BigInt::one() << bits;
    let scaled = t * Rational::from_integer(scale.clone());
    Rational::new(scaled.round().to_integer(), scale)
}

/// Bits of resolution for snapping parameters that are spaced `step` apart.
pub(crate) fn resolution_bits(step: &Rational) -> u32 {
    let ratio = step.denom().bits() as i64 - step.numer().bits() as i64;
    (ratio.max(0) as u32) + 12
}

/// `u` rotated by the unit vector `c`.
pub(crate) fn rotate(u: &RationalPoint, c: &RationalPoint) -> RationalPoint {
    RationalPoint::new(&u.x * &c.x - &u.y * &c.y, &u.x * &c.y + &u.y * &c.x)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arrangement::count_convex_quadrilaterals;
    use crate::pointset::validate_strong_general_position;

    #[test]
    fn random_is_deterministic_and_valid() {
        let a = gen_random_sgp(5, ColorScheme::None, 1).unwrap();
        let b = gen_random_sgp(5, ColorScheme::None, 1).unwrap();
        assert_eq!(a, b);
        assert!(validate_strong_general_position(&a).is_valid());
        assert_ne!(a, gen_random_sgp(5, ColorScheme::None, 2).unwrap());
    }

    #[test]
    fn balanced_colors() {
        let s = gen_random_sgp(4, ColorScheme::Balanced, 3).unwrap();
        assert_eq!(s.color_count(Color::Red), 2);
        assert_eq!(s.color_count(Color::Blue), 2);
        assert!(s.is_balanced());
        assert!(gen_random_sgp(6, ColorScheme::Balanced, 3).is_err());
    }

    #[test]
    fn three_points_always_valid() {
        for seed in 0..20 {
            let s = gen_random_sgp(3, ColorScheme::None, seed).unwrap();
            assert!(validate_strong_general_position(&s).is_valid());
        }
    }

    #[test]
    fn tiny_grid_exhausts_retries() {
        let p = RandomParams { grid: 2, retries: 50 };
        assert!(matches!(
            gen_random_sgp_with(5, ColorScheme::None, 0, &p),
            Err(Error::RetryExhausted(_))
        ));
    }

    #[test]
    fn convex_sets() {
        for n in 4..=7 {
            let s = gen_convex(n, ColorScheme::None, n as u64).unwrap();
            assert!(validate_strong_general_position(&s).is_valid());
            let hp = s.homogeneous();
            let c4 = (n * (n - 1) * (n - 2) * (n - 3) / 24) as u64;
            assert_eq!(count_convex_quadrilaterals(&hp), c4);
            for p in s.points() {
                assert_eq!(&p.x * &p.x + &p.y * &p.y, Rational::one());
            }
        }
    }
}
