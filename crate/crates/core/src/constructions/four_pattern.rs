//! Bicolored set with many colored radial orderings: rays in two narrow
//! wedges meet two pairs of circles, the crossings become four kinds of
//! color patterns, and every cell cut out of a third disk by the
//! bichromatic lines gets a designated observation point.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use rand::Rng;
use rand_chacha::ChaCha8Rng;

use crate::circular::{color_word, radial_order, CircularOrder};
use crate::constructions::{resolution_bits, rng, rotate, snap, RETRY_BUDGET};
use crate::error::{Error, Result};
use crate::kernel::{circle_point, int, line_intersection, line_through, rat, Intersection, Line, Rational, RationalPoint};
use crate::pointset::{validate_homogeneous, Color, ColoredPointSet};

/// The four point kinds of the uncolored skeleton; a point of kind `k`
/// becomes `k.size()` red followed by `k.size()` blue points.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum PatternKind {
    /// On the boundary of the first disk.
    Blue,
    /// On the small circle around the first center.
    Red,
    /// On the boundary of the second disk.
    Yellow,
    /// On the small circle around the second center.
    Green,
}

impl PatternKind {
    pub fn size(self) -> usize {
        match self {
            PatternKind::Blue => 1,
            PatternKind::Red => 2,
            PatternKind::Yellow => 3,
            PatternKind::Green => 4,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FourPatternParams {
    /// Rays per wedge.
    pub m: usize,
    /// Leftover points per color.
    pub r: usize,
    /// Radius of the two small circles.
    pub epsilon: Rational,
    /// Wedge half-width, as a half-angle parameter.
    pub alpha_t: Rational,
    /// Chord spacing inside a pattern.
    pub delta: Rational,
    /// Half-angle spacing of the far leftover arc.
    pub far_spacing: Rational,
    pub retry_budget: usize,
    /// Halvings performed before every check passed.
    pub halvings: usize,
}

#[derive(Clone, Debug)]
pub struct FourPattern {
    pub set: ColoredPointSet,
    /// One interior point per cell of the bichromatic lines inside the
    /// third disk.
    pub q_points: Vec<RationalPoint>,
    pub params: FourPatternParams,
    /// Centers of the three disks.
    pub centers: [RationalPoint; 3],
    pub disk_radius: Rational,
    /// Indices of every pattern, first index at the skeleton point.
    pub patterns: Vec<(PatternKind, Vec<usize>)>,
    /// Far points: `r` red then `r` blue, clockwise.
    pub leftover: Vec<usize>,
    /// Lines through a red-kind and a blue-kind skeleton point.
    pub l_lines: Vec<(usize, usize)>,
    /// Lines through a yellow-kind and a green-kind skeleton point.
    pub lp_lines: Vec<(usize, usize)>,
}

impl FourPattern {
    pub fn carrier(&self, k: PatternKind) -> Vec<usize> {
        self.patterns.iter().filter(|p| p.0 == k).map(|p| p.1[0]).collect()
    }

    /// Points derived from the first disk and small circle.
    pub fn first_group(&self) -> Vec<usize> {
        self.group(&[PatternKind::Blue, PatternKind::Red])
    }

    pub fn second_group(&self) -> Vec<usize> {
        self.group(&[PatternKind::Yellow, PatternKind::Green])
    }

    fn group(&self, kinds: &[PatternKind]) -> Vec<usize> {
        self.patterns
            .iter()
            .filter(|p| kinds.contains(&p.0))
            .flat_map(|p| p.1.iter().copied())
            .collect()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ConditionReport {
    /// Every bichromatic line enters the open third disk, no other skeleton
    /// line does.
    pub every_line_enters: bool,
    /// No two lines of one family cross inside the open third disk.
    pub families_disjoint_inside: bool,
    /// Every line of one family crosses every line of the other in the
    /// closed third disk.
    pub families_cross_inside: bool,
}

impl ConditionReport {
    pub fn all(&self) -> bool {
        self.every_line_enters && self.families_disjoint_inside && self.families_cross_inside
    }
}

/// Whether every block occupies circularly consecutive positions.
pub fn patterns_consecutive(order: &CircularOrder, blocks: &[Vec<usize>]) -> bool {
    let seq = order.sequence();
    let n = seq.len();
    let mut pos = vec![usize::MAX; n];
    for (k, &x) in seq.iter().enumerate() {
        if x < n {
            pos[x] = k;
        }
    }
    let mut member = vec![false; n];
    blocks.iter().all(|block| {
        if block.is_empty() || block.len() == n {
            return true;
        }
        member.iter_mut().for_each(|m| *m = false);
        for &i in block {
            member[pos[i]] = true;
        }
        let starts = (0..n).filter(|&k| member[k] && !member[(k + n - 1) % n]).count();
        starts == 1
    })
}

struct Skeleton {
    centers: [RationalPoint; 3],
    /// Unit directions from the first two centers toward the third.
    axes: [RationalPoint; 2],
}

fn skeleton() -> Skeleton {
    // Side lengths 1, 241/240, 241/240: rational unit directions toward the
    // apex.
    let p1 = RationalPoint::from_ints(0, 0);
    let p2 = RationalPoint::from_ints(1, 0);
    let p3 = RationalPoint::new(rat(1, 2), rat(209, 240));
    let u1 = RationalPoint::new(rat(120, 241), rat(209, 241));
    let u2 = RationalPoint::new(rat(-120, 241), rat(209, 241));
    Skeleton { centers: [p1, p2, p3], axes: [u1, u2] }
}

fn split_n(n: usize) -> Result<(usize, usize)> {
    if n < 20 || n % 2 != 0 {
        return Err(Error::InvalidParameter(format!("n must be even and at least 20, got {n}")));
    }
    let m = (n - 10) / 10;
    let r = n - 10 * m;
    if m > 3 {
        return Err(Error::InvalidParameter(format!("m = {m} is beyond desk scale (at most 3)")));
    }
    Ok((m, r))
}

/// Point on the circle of radius `radius` around `c` at half-angle
/// parameter `t` measured from `axis`.
fn on_circle(c: &RationalPoint, radius: &Rational, axis: &RationalPoint, t: &Rational) -> RationalPoint {
    let d = rotate(axis, &circle_point(t, &Rational::one()));
    RationalPoint::new(&c.x + radius * &d.x, &c.y + radius * &d.y)
}

struct Draft {
    set: ColoredPointSet,
    patterns: Vec<(PatternKind, Vec<usize>)>,
    leftover: Vec<usize>,
    l_lines: Vec<(usize, usize)>,
    lp_lines: Vec<(usize, usize)>,
}

fn jitter(rng: &mut ChaCha8Rng, scale: &Rational) -> Rational {
    scale * Rational::new(BigInt::from(rng.gen_range(-1024i64..=1024)), BigInt::from(1024))
}

fn draft(
    m: usize,
    r: usize,
    eps: &Rational,
    alpha_t: &Rational,
    delta: &Rational,
    far_spacing: &Rational,
    rng: &mut ChaCha8Rng,
) -> Result<Draft> {
    let sk = skeleton();
    let quarter = rat(1, 4);
    let one = Rational::one();
    let two = int(2);
    let mut points: Vec<RationalPoint> = Vec::new();
    let mut colors: Vec<Color> = Vec::new();
    let mut patterns = Vec::new();
    let ray_jitter = alpha_t / int(16 * (m as i64 + 1));

    // skeleton points in order: blue, red around the first center, then
    // yellow, green around the second
    let layout = [
        (PatternKind::Blue, 0usize, &quarter),
        (PatternKind::Red, 0, eps),
        (PatternKind::Yellow, 1, &quarter),
        (PatternKind::Green, 1, eps),
    ];
    for (kind, wedge, radius) in layout {
        let c = &sk.centers[wedge];
        let axis = &sk.axes[wedge];
        for k in 1..=m {
            let base = alpha_t * (rat(2 * k as i64, m as i64 + 1) - &one);
            let t0 = base + jitter(rng, &ray_jitter);
            let step = delta * (&one + &t0 * &t0) / (&two * radius);
            let bits = resolution_bits(&step).max(resolution_bits(&ray_jitter));
            let (t0, step) = (snap(&t0, bits), snap(&step, bits));
            let mut idx = Vec::with_capacity(2 * kind.size());
            for j in 0..2 * kind.size() {
                // an exact progression would make the chords (j, last - j)
                // concurrent, so each offset is nudged
                let offset = rat(1024 * j as i64 + rng.gen_range(-128i64..=128), 1024);
                let t = &t0 - &step * offset;
                idx.push(points.len());
                points.push(on_circle(c, radius, axis, &t));
                colors.push(if j < kind.size() { Color::Red } else { Color::Blue });
            }
            patterns.push((kind, idx));
        }
    }

    // far arc above the construction: r red then r blue, clockwise
    let far_center = RationalPoint::new(rat(1, 2), rat(1, 3));
    let far_radius = int(256);
    let east = RationalPoint::from_ints(1, 0);
    let mut leftover = Vec::with_capacity(2 * r);
    for j in 0..2 * r {
        let t = &one - far_spacing * int(j as i64) + jitter(rng, &(far_spacing / int(8)));
        leftover.push(points.len());
        points.push(on_circle(&far_center, &far_radius, &east, &t));
        colors.push(if j < r { Color::Red } else { Color::Blue });
    }

    let carriers = |k: PatternKind| -> Vec<usize> {
        patterns.iter().filter(|p: &&(PatternKind, Vec<usize>)| p.0 == k).map(|p| p.1[0]).collect()
    };
    let pairs = |a: Vec<usize>, b: Vec<usize>| -> Vec<(usize, usize)> {
        a.iter().flat_map(|&x| b.iter().map(move |&y| (x.min(y), x.max(y)))).collect()
    };
    let l_lines = pairs(carriers(PatternKind::Red), carriers(PatternKind::Blue));
    let lp_lines = pairs(carriers(PatternKind::Yellow), carriers(PatternKind::Green));
    let set = ColoredPointSet::new(points, Some(colors))?;
    Ok(Draft { set, patterns, leftover, l_lines, lp_lines })
}

fn line_of(set: &ColoredPointSet, (a, b): (usize, usize)) -> Line {
    line_through(&set.points()[a], &set.points()[b]).expect("distinct points")
}

fn check_conditions(
    set: &ColoredPointSet,
    skeleton_points: &[usize],
    l_lines: &[(usize, usize)],
    lp_lines: &[(usize, usize)],
    center: &RationalPoint,
    radius2: &Rational,
) -> ConditionReport {
    let fam: BTreeSet<(usize, usize)> = l_lines.iter().chain(lp_lines).copied().collect();
    let mut every_line_enters = true;
    for (x, &a) in skeleton_points.iter().enumerate() {
        for &b in &skeleton_points[x + 1..] {
            let key = (a.min(b), a.max(b));
            let enters = line_of(set, key).dist2(center) < *radius2;
            if enters != fam.contains(&key) {
                every_line_enters = false;
            }
        }
    }
    let crossing_inside = |p: &(usize, usize), q: &(usize, usize), closed: bool| -> bool {
        match line_intersection(&line_of(set, *p), &line_of(set, *q)) {
            Intersection::Point(x) => {
                let d = x.dist2(center);
                if closed {
                    d <= *radius2
                } else {
                    d < *radius2
                }
            }
            _ => false,
        }
    };
    let disjoint = |f: &[(usize, usize)]| {
        (0..f.len()).all(|i| (i + 1..f.len()).all(|j| !crossing_inside(&f[i], &f[j], false)))
    };
    let families_disjoint_inside = disjoint(l_lines) && disjoint(lp_lines);
    let families_cross_inside =
        l_lines.iter().all(|p| lp_lines.iter().all(|q| crossing_inside(p, q, true)));
    ConditionReport { every_line_enters, families_disjoint_inside, families_cross_inside }
}

pub fn verify_four_pattern_conditions(fp: &FourPattern) -> ConditionReport {
    let skeleton_points: Vec<usize> = fp.patterns.iter().map(|p| p.1[0]).collect();
    check_conditions(
        &fp.set,
        &skeleton_points,
        &fp.l_lines,
        &fp.lp_lines,
        &fp.centers[2],
        &(&fp.disk_radius * &fp.disk_radius),
    )
}

/// Sorts a family by where its lines cross `transversal`, returning the
/// sorted lines and the transversal's direction (index increases along it).
fn sort_family(set: &ColoredPointSet, family: &[(usize, usize)], transversal: (usize, usize)) -> (Vec<Line>, RationalPoint) {
    let (a, b) = (&set.points()[transversal.0], &set.points()[transversal.1]);
    let (dx, dy) = b.sub(a);
    let norm = dx.abs() + dy.abs();
    let dir = RationalPoint::new(&dx / &norm, &dy / &norm);
    let t_line = line_through(a, b).expect("distinct");
    let mut keyed: Vec<(Rational, Line)> = family
        .iter()
        .map(|&p| {
            let l = line_of(set, p);
            let t = match line_intersection(&l, &t_line) {
                Intersection::Point(x) => {
                    let (ex, ey) = x.sub(a);
                    if dx.is_zero() { ey / &dy } else { ex / &dx }
                }
                _ => Rational::zero(),
            };
            (t, l)
        })
        .collect();
    keyed.sort_by(|x, y| x.0.cmp(&y.0));
    (keyed.into_iter().map(|k| k.1).collect(), dir)
}

/// Number of leading lines of a sorted family that `q` is past, or `None`
/// if the lines it is past are not a prefix.
fn strip_index(lines: &[Line], dir: &RationalPoint, q: &RationalPoint) -> Option<usize> {
    let past: Vec<bool> = lines
        .iter()
        .map(|l| {
            let forward = (&l.a * &dir.x + &l.b * &dir.y).is_positive();
            let v = l.eval(q);
            !v.is_zero() && (v.is_positive() == forward)
        })
        .collect();
    let i = past.iter().take_while(|&&p| p).count();
    past[i..].iter().all(|&p| !p).then_some(i)
}

/// One point per cell of the grid cut from the third disk, from averages of
/// grid corners; outer cells use corners pushed `h` outward.
fn designated_points(
    set: &ColoredPointSet,
    l_lines: &[(usize, usize)],
    lp_lines: &[(usize, usize)],
    center: &RationalPoint,
    radius2: &Rational,
) -> Option<Vec<RationalPoint>> {
    let (ls, t_l) = sort_family(set, l_lines, lp_lines[0]);
    let (lps, t_lp) = sort_family(set, lp_lines, l_lines[0]);
    let (a, b) = (ls.len(), lps.len());
    let mut grid = vec![vec![RationalPoint::from_ints(0, 0); b]; a];
    for (i, l) in ls.iter().enumerate() {
        for (j, lp) in lps.iter().enumerate() {
            match line_intersection(l, lp) {
                Intersection::Point(x) => grid[i][j] = x,
                _ => return None,
            }
        }
    }
    let mut h = rat(1, 64);
    for _ in 0..64 {
        let corner = |k: i64, l: i64| -> RationalPoint {
            let ck = k.clamp(0, a as i64 - 1);
            let cl = l.clamp(0, b as i64 - 1);
            let base = &grid[ck as usize][cl as usize];
            let sk = &h * int(k - ck);
            let sl = &h * int(l - cl);
            RationalPoint::new(
                &base.x + &sk * &t_l.x + &sl * &t_lp.x,
                &base.y + &sk * &t_l.y + &sl * &t_lp.y,
            )
        };
        let mut out = Vec::with_capacity((a + 1) * (b + 1));
        let mut ok = true;
        'cells: for i in 0..=a as i64 {
            for j in 0..=b as i64 {
                let cs = [corner(i - 1, j - 1), corner(i, j - 1), corner(i - 1, j), corner(i, j)];
                let four = int(4);
                let q = RationalPoint::new(
                    cs.iter().map(|c| c.x.clone()).sum::<Rational>() / &four,
                    cs.iter().map(|c| c.y.clone()).sum::<Rational>() / &four,
                );
                let inside = q.dist2(center) < *radius2
                    && strip_index(&ls, &t_l, &q) == Some(i as usize)
                    && strip_index(&lps, &t_lp, &q) == Some(j as usize)
                    && radial_order(set, &q).is_ok();
                if !inside {
                    ok = false;
                    break 'cells;
                }
                out.push(q);
            }
        }
        if ok {
            return Some(out);
        }
        h /= int(2);
    }
    None
}

pub fn gen_four_pattern(n: usize, seed: u64) -> Result<FourPattern> {
    let (m, r) = split_n(n)?;
    let sk = skeleton();
    let disk_radius = rat(1, 4);
    let radius2 = &disk_radius * &disk_radius;
    let mut rng = rng(seed);
    let mut eps = rat(1, 16);
    let mut alpha_t = rat(1, 64);
    // patterns on neighbouring rays of a small circle are about
    // `eps * alpha_t` apart, so the spacing follows that product
    let delta_of = |eps: &Rational, alpha_t: &Rational| eps * alpha_t / int(64);
    let mut delta = delta_of(&eps, &alpha_t);
    let mut far_spacing = rat(1, 1 << 14);
    let mut attempts = 0;

    for halvings in 0..RETRY_BUDGET {
        if eps.denom().bits() > 256 {
            return Err(Error::ParameterDegenerate("epsilon fell below 2^-256".into()));
        }
        // a few fresh jitters per parameter level for general position
        let mut accepted = None;
        for _ in 0..8 {
            attempts += 1;
            let d = draft(m, r, &eps, &alpha_t, &delta, &far_spacing, &mut rng)?;
            if validate_homogeneous(&d.set.homogeneous()).is_none() {
                accepted = Some(d);
                break;
            }
        }
        let Some(d) = accepted else {
            eps /= int(2);
            alpha_t /= int(2);
            delta = delta_of(&eps, &alpha_t);
            far_spacing /= int(2);
            continue;
        };
        let skeleton_points: Vec<usize> = d.patterns.iter().map(|p| p.1[0]).collect();
        let report =
            check_conditions(&d.set, &skeleton_points, &d.l_lines, &d.lp_lines, &sk.centers[2], &radius2);
        let q_points = if report.all() {
            designated_points(&d.set, &d.l_lines, &d.lp_lines, &sk.centers[2], &radius2)
        } else {
            None
        };
        if let Some(q_points) = q_points {
            if designated_ok(&d, &q_points, r)? {
                let params = FourPatternParams {
                    m,
                    r,
                    epsilon: eps,
                    alpha_t,
                    delta,
                    far_spacing,
                    retry_budget: RETRY_BUDGET,
                    halvings,
                };
                return Ok(FourPattern {
                    set: d.set,
                    q_points,
                    params,
                    centers: sk.centers,
                    disk_radius,
                    patterns: d.patterns,
                    leftover: d.leftover,
                    l_lines: d.l_lines,
                    lp_lines: d.lp_lines,
                });
            }
        }
        eps /= int(2);
        alpha_t /= int(2);
        delta = delta_of(&eps, &alpha_t);
        far_spacing /= int(2);
    }
    Err(Error::RetryExhausted(format!("four-pattern construction failed after {attempts} drafts")))
}

/// Patterns and the leftover block are consecutive at every designated
/// point, the leftover block reads red then blue, and the colored
/// orderings there are pairwise distinct.
fn designated_ok(d: &Draft, q_points: &[RationalPoint], r: usize) -> Result<bool> {
    let mut blocks: Vec<Vec<usize>> = d.patterns.iter().map(|p| p.1.clone()).collect();
    blocks.push(d.leftover.clone());
    let colors = d.set.colors().expect("colored");
    let mut words = BTreeSet::new();
    for q in q_points {
        let o = radial_order(&d.set, q)?;
        if !patterns_consecutive(&o, &blocks) {
            return Ok(false);
        }
        let seq = o.sequence();
        let k = seq.len();
        let start = (0..k)
            .find(|&i| d.leftover.contains(&seq[i]) && !d.leftover.contains(&seq[(i + k - 1) % k]))
            .expect("leftover block is present");
        let block: Vec<Color> = (0..2 * r).map(|j| colors[seq[(start + j) % k]]).collect();
        if block[..r].iter().any(|&c| c != Color::Red) || block[r..].iter().any(|&c| c != Color::Blue) {
            return Ok(false);
        }
        words.insert(color_word(&o, &d.set)?);
    }
    Ok(words.len() == q_points.len())
}
