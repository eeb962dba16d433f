//! Point sets, two-colorings, strong general position and the JSON file
//! format shared by every command.

use std::fmt;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use serde_json::{Map, Value};

use crate::error::{Error, Result};
use crate::hom::{self, crossing_param, HLine, HPoint, Param};
use crate::kernel::{format_rational, parse_rational, RationalPoint};

/// `Blue < Red`, so a canonical color word prefers leading blues.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Color {
    Blue,
    Red,
}

impl Color {
    pub fn letter(self) -> char {
        match self {
            Color::Red => 'R',
            Color::Blue => 'B',
        }
    }

    pub fn from_letter(c: &str) -> Result<Color> {
        match c {
            "R" | "r" => Ok(Color::Red),
            "B" | "b" => Ok(Color::Blue),
            _ => Err(Error::Parse(format!("unknown color {c:?}"))),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ColoredPointSet {
    points: Vec<RationalPoint>,
    colors: Option<Vec<Color>>,
}

impl ColoredPointSet {
    pub fn new(points: Vec<RationalPoint>, colors: Option<Vec<Color>>) -> Result<Self> {
        if let Some(c) = &colors {
            if c.len() != points.len() {
                return Err(Error::InvalidPointSet(format!(
                    "{} colors for {} points",
                    c.len(),
                    points.len()
                )));
            }
        }
        let mut sorted: Vec<&RationalPoint> = points.iter().collect();
        sorted.sort();
        if let Some(w) = sorted.windows(2).find(|w| w[0] == w[1]) {
            return Err(Error::InvalidPointSet(format!("duplicate point {}", w[0])));
        }
        Ok(ColoredPointSet { points, colors })
    }

    pub fn uncolored(points: Vec<RationalPoint>) -> Result<Self> {
        Self::new(points, None)
    }

    pub fn points(&self) -> &[RationalPoint] {
        &self.points
    }

    pub fn colors(&self) -> Option<&[Color]> {
        self.colors.as_deref()
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn color_count(&self, color: Color) -> usize {
        self.colors
            .as_ref()
            .map_or(0, |cs| cs.iter().filter(|&&c| c == color).count())
    }

    /// Equal red and blue counts, each even.
    pub fn is_balanced(&self) -> bool {
        let r = self.color_count(Color::Red);
        let b = self.color_count(Color::Blue);
        self.colors.is_some() && r == b && r % 2 == 0 && r + b == self.len()
    }

    pub fn with_colors(&self, colors: Option<Vec<Color>>) -> Result<Self> {
        Self::new(self.points.clone(), colors)
    }

    pub fn homogeneous(&self) -> Vec<HPoint> {
        self.points.iter().map(HPoint::from_rational).collect()
    }

    pub fn to_json(&self, meta: Option<&Map<String, Value>>) -> String {
        let doc = PointSetDocument {
            meta: meta.cloned(),
            points: self
                .points
                .iter()
                .enumerate()
                .map(|(i, p)| PointRecord {
                    x: format_rational(&p.x),
                    y: format_rational(&p.y),
                    color: self.colors.as_ref().map(|c| c[i].letter().to_string()),
                })
                .collect(),
        };
        let mut s = serde_json::to_string_pretty(&doc).expect("point set serializes");
        s.push('\n');
        s
    }

    pub fn from_json(text: &str) -> Result<PointSetFile> {
        let doc: PointSetDocument = serde_json::from_str(text)?;
        let mut points = Vec::with_capacity(doc.points.len());
        let mut colors = Vec::with_capacity(doc.points.len());
        for rec in &doc.points {
            points.push(RationalPoint::new(parse_rational(&rec.x)?, parse_rational(&rec.y)?));
            colors.push(rec.color.as_deref().map(Color::from_letter).transpose()?);
        }
        let colors = if colors.iter().all(Option::is_none) {
            None
        } else if colors.iter().all(Option::is_some) {
            Some(colors.into_iter().flatten().collect())
        } else {
            return Err(Error::InvalidPointSet("some points colored, some not".into()));
        };
        Ok(PointSetFile { set: ColoredPointSet::new(points, colors)?, meta: doc.meta })
    }
}

#[derive(Clone, Debug)]
pub struct PointSetFile {
    pub set: ColoredPointSet,
    pub meta: Option<Map<String, Value>>,
}

#[derive(Serialize, Deserialize)]
struct PointRecord {
    x: String,
    y: String,
    color: Option<String>,
}

#[derive(Serialize, Deserialize)]
struct PointSetDocument {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    meta: Option<Map<String, Value>>,
    points: Vec<PointRecord>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Violation {
    CollinearPoints([usize; 3]),
    /// Three spanned lines, given by their defining point pairs, through a
    /// common point outside the set.
    ConcurrentLines { lines: [(usize, usize); 3], point: RationalPoint },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::CollinearPoints([a, b, c]) => {
                write!(f, "points {a}, {b}, {c} are collinear")
            }
            Violation::ConcurrentLines { lines, point } => write!(
                f,
                "lines {:?}, {:?}, {:?} meet at {} which is not in the set",
                lines[0], lines[1], lines[2], point
            ),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Validation {
    Valid,
    Violation(Violation),
}

impl Validation {
    pub fn is_valid(&self) -> bool {
        matches!(self, Validation::Valid)
    }

    pub fn into_result(self) -> Result<()> {
        match self {
            Validation::Valid => Ok(()),
            Validation::Violation(v) => Err(Error::NotValidated(v)),
        }
    }
}

pub fn validate_strong_general_position(s: &ColoredPointSet) -> Validation {
    let pts = s.homogeneous();
    match validate_homogeneous(&pts) {
        None => Validation::Valid,
        Some(v) => Validation::Violation(v),
    }
}

pub(crate) fn validate_homogeneous(pts: &[HPoint]) -> Option<Violation> {
    let n = pts.len();
    let lines: Vec<(usize, usize)> =
        (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).collect();
    let coeffs: Vec<HLine> = lines.iter().map(|&(i, j)| hom::join(&pts[i], &pts[j])).collect();

    for (li, &(i, j)) in lines.iter().enumerate() {
        for k in j + 1..n {
            if coeffs[li].side(&pts[k]) == num_bigint::Sign::NoSign {
                return Some(Violation::CollinearPoints([i, j, k]));
            }
        }
    }

    // With no collinear triple, two lines sharing no endpoint never meet at a
    // point of the set, so any repeated crossing position along a line is a
    // concurrency outside the set.
    (0..lines.len()).into_par_iter().find_map_first(|li| {
        let (i, j) = lines[li];
        let mut hits: Vec<(f64, Param, usize)> = lines
            .iter()
            .enumerate()
            .filter(|&(_, &(k, l))| k != i && k != j && l != i && l != j)
            .filter_map(|(lj, _)| {
                crossing_param(&pts[i], &pts[j], &coeffs[lj]).map(|t| (t.approx(), t, lj))
            })
            .collect();
        hits.sort_by(|a, b| a.0.total_cmp(&b.0));
        // equal params have approximations within a few ulps, so exact
        // comparison is only needed inside runs of near-equal keys
        let close = |a: f64, b: f64| (b - a).abs() <= 1e-12 * a.abs().max(b.abs());
        let pair = (0..hits.len()).find_map(|x| {
            (x + 1..hits.len())
                .take_while(|&y| close(hits[x].0, hits[y].0))
                .find(|&y| hits[x].1 == hits[y].1)
                .map(|y| (hits[x].2, hits[y].2))
        });
        pair.map(|(a, b)| {
            let point = hom::meet(&coeffs[li], &coeffs[a])
                .expect("crossing lines meet")
                .to_rational();
            let mut trio = [lines[li], lines[a], lines[b]];
            trio.sort();
            Violation::ConcurrentLines { lines: trio, point }
        })
    })
}
