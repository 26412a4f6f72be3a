//! Digital topology in the plane Z².
//!
//! Points carry exact integer coordinates of any signed primitive type
//! (see [`Coord`]); the aliases at the crate root fix the common choices.
//!
//! - [`lattice`]: c₁/c₂ adjacency, neighborhoods, components of sets and
//!   complements.
//! - [`maps`]: tabulated maps, digital continuity, composition, retractions.
//! - [`curves`]: closed and simple closed curves, Jordan partitions, disks
//!   and bounding curves.
//! - [`convexity`]: digital segments, exact convex hulls, digital convexity.
//! - [`retract`]: retractions onto convex sets.
//! - [`afpp`]: approximate fixed points and the exhaustive AFPP decision,
//!   plus constructions of maps without approximate fixed points.
//! - [`io`]: grid and list formats, SVG rendering.

pub mod afpp;
pub mod convexity;
pub mod curves;
pub mod error;
pub mod fixtures;
pub mod io;
pub mod lattice;
pub mod maps;
pub mod retract;
pub mod scalar;

pub use error::{Error, Result};
pub use lattice::{AdjacencyKind, DigitalImage, Point, PointSet};
pub use scalar::Coord;

pub type Point64 = lattice::Point<i64>;
pub type Point32 = lattice::Point<i32>;
pub type PointSet64 = lattice::PointSet<i64>;
pub type PointSet32 = lattice::PointSet<i32>;
pub type Image64 = lattice::DigitalImage<i64>;
pub type Image32 = lattice::DigitalImage<i32>;
pub type Map64 = maps::PointMap<i64>;
pub type Map32 = maps::PointMap<i32>;
pub type Curve64 = curves::Curve<i64>;
pub type Curve32 = curves::Curve<i32>;
pub type Hull64 = convexity::Hull<i64>;
pub type Verdict64 = afpp::AfppVerdict<i64>;
