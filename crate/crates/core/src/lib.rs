//! Exact radial orderings of planar point sets.
//!
//! Points carry arbitrary-precision rational coordinates and every predicate
//! is an exact sign test. The crate builds the arrangement of all lines
//! spanned by a point set, groups its faces into regions of constant radial
//! order, counts distinct (colored) radial orderings, and generates the
//! extremal constructions used to probe those counts.

pub mod arrangement;
pub mod circular;
pub mod constructions;
pub mod enumeration;
pub mod error;
pub mod hom;
pub mod kernel;
pub mod pointset;
pub mod union_find;
pub mod verify;

pub use arrangement::{
    build_arrangement, build_order_partition, classify_edges, compute_stats, Arrangement,
    ArrangementStats, EdgeKind, OrderPartition,
};
pub use circular::{
    adjacent_transposition_diff, canonical_rotation, color_word, radial_order,
    star_polygonization, CircularOrder, ColorWord, TranspositionDiff,
};
pub use error::{Error, Result};
pub use kernel::{
    circle_point, convex_hull, line_intersection, line_through, orientation, Intersection, Line,
    Orientation, Rational, RationalPoint,
};
pub use pointset::{validate_strong_general_position, Color, ColoredPointSet, Validation, Violation};
