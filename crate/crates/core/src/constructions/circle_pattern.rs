use std::f64::consts::PI;

use num_bigint::BigInt;
use num_traits::One;
use rand::Rng;

use crate::constructions::{dyadic, resolution_bits, rng, snap, RETRY_BUDGET};
use crate::enumeration::census;
use crate::error::{Error, Result};
use crate::kernel::{circle_point, rat, Rational};
use crate::pointset::{validate_homogeneous, Color, ColoredPointSet};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CirclePatternParams {
    pub half_n: usize,
    /// Chord spacing between consecutive points of a pattern.
    pub delta: Rational,
    /// Largest jitter applied to a base half-angle parameter.
    pub perturbation: Rational,
    /// Halvings of `delta` performed before the census stabilized.
    pub halvings: usize,
}

#[derive(Clone, Debug)]
pub struct CirclePattern {
    pub set: ColoredPointSet,
    pub params: CirclePatternParams,
    /// Point indices of each pattern in clockwise order, red first.
    pub patterns: Vec<[usize; 4]>,
    /// Radius of the origin-centred circle carrying each pattern.
    pub radii: Vec<Rational>,
    /// Colored census at the accepted spacing, if it was computed.
    pub rho_colored: Option<usize>,
}

const PATTERN: [Color; 4] = [Color::Red, Color::Blue, Color::Blue, Color::Red];

/// `n/2` base points near even angles, pattern `R,B,B,R` at each, with the
/// spacing halved until two successive spacings give the same colored
/// census.
pub fn gen_circle_pattern(n: usize, seed: u64) -> Result<CirclePattern> {
    gen_circle_pattern_with(n, seed, true)
}

/// With `stabilize == false` the initial spacing is used as is.
pub fn gen_circle_pattern_with(n: usize, seed: u64, stabilize: bool) -> Result<CirclePattern> {
    if n < 8 || n % 2 != 0 {
        return Err(Error::InvalidParameter(format!("n must be even and at least 8, got {n}")));
    }
    let h = n / 2;
    let mut rng = rng(seed);
    let jitter_den = BigInt::from(1u32 << 16);
    let perturbation = Rational::new(BigInt::from(64), jitter_den.clone());
    // every base point and its pattern stay on the unit circle
    let radii: Vec<Rational> = vec![Rational::one(); h];

    for _ in 0..RETRY_BUDGET {
        let bases: Vec<Rational> = (0..h)
            .map(|i| {
                let theta = -PI + 2.0 * PI * (i as f64 + 0.5) / h as f64;
                let j = Rational::new(BigInt::from(rng.gen_range(-64i64..=64)), jitter_den.clone());
                dyadic((theta / 2.0).tan(), 12) + j
            })
            .collect();
        let build = |delta: &Rational| build(&bases, &radii, delta);

        let mut delta = rat(1, 1 << 16);
        let mut halvings = 0;
        let mut current = build(&delta);
        if !stabilize {
            if let Some((set, patterns)) = current {
                let params = CirclePatternParams { half_n: h, delta, perturbation, halvings };
                return Ok(CirclePattern { set, params, patterns, radii, rho_colored: None });
            }
            continue;
        }
        let mut current_rho = match &current {
            Some((s, _)) => Some(census(s)?.rho_colored.expect("colored")),
            None => None,
        };
        while halvings < RETRY_BUDGET {
            let half = &delta / Rational::from_integer(2.into());
            let next = build(&half);
            let next_rho = match &next {
                Some((s, _)) => Some(census(s)?.rho_colored.expect("colored")),
                None => None,
            };
            if let (Some((set, patterns)), Some(a), Some(b)) = (&current, current_rho, next_rho) {
                if a == b {
                    let params = CirclePatternParams { half_n: h, delta, perturbation, halvings };
                    return Ok(CirclePattern {
                        set: set.clone(),
                        params,
                        patterns: patterns.clone(),
                        radii,
                        rho_colored: Some(a),
                    });
                }
            }
            delta = half;
            halvings += 1;
            current = next;
            current_rho = next_rho;
        }
    }
    Err(Error::RetryExhausted("circle pattern did not stabilize".into()))
}

/// `None` when the set is not in strong general position.
fn build(
    bases: &[Rational],
    radii: &[Rational],
    delta: &Rational,
) -> Option<(ColoredPointSet, Vec<[usize; 4]>)> {
    let one = Rational::one();
    let two = Rational::from_integer(2.into());
    let mut points = Vec::with_capacity(4 * bases.len());
    let mut colors = Vec::with_capacity(4 * bases.len());
    let mut patterns = Vec::with_capacity(bases.len());
    for (t0, radius) in bases.iter().zip(radii) {
        // the half-angle step that moves a chord of about `delta`
        let step = delta * (&one + t0 * t0) / (&two * radius);
        let step = snap(&step, resolution_bits(&step).max(16));
        let mut idx = [0usize; 4];
        for (j, color) in PATTERN.iter().enumerate() {
            let t = t0 - &step * Rational::from_integer(BigInt::from(j));
            idx[j] = points.len();
            points.push(circle_point(&t, radius));
            colors.push(*color);
        }
        patterns.push(idx);
    }
    let set = ColoredPointSet::new(points, Some(colors)).ok()?;
    validate_homogeneous(&set.homogeneous()).is_none().then_some((set, patterns))
}
