//! The integer scalar the whole crate is generic over.

use core::fmt;
use core::hash::Hash;

use num_integer::{Integer, Roots};
use num_traits::{FromPrimitive, Signed, ToPrimitive};

/// Signed integer type backing every exact value in this crate.
///
/// `i64`/`i128` work for small searches; `num_bigint::BigInt` (the crate-root
/// alias [`crate::Int`]) is the intended backend for anything that expands a
/// continued fraction to real depth, since convergent denominators grow
/// exponentially.
pub trait Scalar:
    Integer
    + Roots
    + Signed
    + FromPrimitive
    + ToPrimitive
    + Clone
    + Hash
    + fmt::Debug
    + fmt::Display
    + 'static
{
}

impl<T> Scalar for T where
    T: Integer
        + Roots
        + Signed
        + FromPrimitive
        + ToPrimitive
        + Clone
        + Hash
        + fmt::Debug
        + fmt::Display
        + 'static
{
}

/// Shorthand for lifting an `i64` constant into the scalar type.
pub fn int<T: Scalar>(v: i64) -> T {
    T::from_i64(v).expect("i64 constant must fit in the scalar type")
}

/// 2^p as a scalar, by repeated doubling.
pub(crate) fn pow2<T: Scalar>(p: usize) -> T {
    let two: T = int(2);
    let mut out = T::one();
    for _ in 0..p {
        out = out * two.clone();
    }
    out
}
