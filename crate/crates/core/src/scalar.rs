//! Integer coordinate types accepted by the lattice machinery.

use std::fmt::{Debug, Display};
use std::hash::Hash;
use std::str::FromStr;

use num_traits::{PrimInt, Signed};
use serde::de::DeserializeOwned;
use serde::Serialize;

/// A signed machine integer usable as a lattice coordinate.
///
/// Everything in this crate is exact: adjacency, hulls and retraction
/// formulas only ever add, subtract, compare and multiply coordinates.
/// Products (hull orientation tests) are widened to `i128` first, so any
/// coordinate type up to 64 bits is safe.
pub trait Coord:
    PrimInt + Signed + Hash + Debug + Display + FromStr + Serialize + DeserializeOwned + Send + Sync + 'static
{
    /// Widen to `i128` for exact products.
    fn wide(self) -> i128 {
        self.to_i128().expect("primitive signed integers fit in i128")
    }

    /// Convert a small count (grid width, offset) into a coordinate.
    fn from_usize(n: usize) -> Self {
        <Self as num_traits::NumCast>::from(n).expect("count does not fit the coordinate type")
    }
}

impl<T> Coord for T where
    T: PrimInt + Signed + Hash + Debug + Display + FromStr + Serialize + DeserializeOwned + Send + Sync + 'static
{
}

/// Clamp `v` into `[lo, hi]`. Requires `lo <= hi`.
pub(crate) fn clamp<C: Coord>(v: C, lo: C, hi: C) -> C {
    debug_assert!(lo <= hi);
    v.max(lo).min(hi)
}

/// Floor of `(a + b) / 2` without overflow concerns for in-range inputs.
pub(crate) fn floor_midpoint<C: Coord>(a: C, b: C) -> C {
    let two = C::one() + C::one();
    let s = a + b;
    let q = s / two;
    if s % two != C::zero() && s < C::zero() {
        q - C::one()
    } else {
        q
    }
}
