//! The integer scalar every triangle is generic over.

use std::fmt::{Debug, Display};
use std::str::FromStr;

use num_integer::Integer;
use num_traits::{CheckedAdd, CheckedMul, CheckedSub, FromPrimitive, Signed};

/// Exact signed integer usable as a triangle entry.
///
/// Implemented for [`num_bigint::BigInt`] (the default everywhere in this
/// crate) and for the primitive `i64`/`i128`, which are convenient for small
/// triangles but overflow deep in the multiplicative generator. Builders use
/// the checked operations so a fixed-width scalar reports overflow instead of
/// wrapping.
pub trait Scalar:
    Integer
    + Signed
    + Clone
    + Debug
    + Display
    + FromStr
    + FromPrimitive
    + CheckedAdd
    + CheckedSub
    + CheckedMul
    + Send
    + Sync
    + 'static
{
    fn from_index(i: usize) -> Self {
        Self::from_usize(i).expect("index fits in scalar")
    }
}

impl<T> Scalar for T where
    T: Integer
        + Signed
        + Clone
        + Debug
        + Display
        + FromStr
        + FromPrimitive
        + CheckedAdd
        + CheckedSub
        + CheckedMul
        + Send
        + Sync
        + 'static
{
}
