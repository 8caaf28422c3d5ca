use std::fmt;

use num_integer::Integer;
use num_traits::{CheckedAdd, CheckedMul, CheckedSub, FromPrimitive, ToPrimitive};

use crate::{Error, Result};

/// Integer type the exact kernels are generic over.
///
/// Every operation goes through the checked arithmetic traits, so `i64`,
/// `u64` and `i128` surface [`Error::Overflow`] where a value would not fit,
/// while [`num_bigint::BigInt`] always succeeds.
pub trait ExactScalar:
    Clone
    + Integer
    + CheckedAdd
    + CheckedSub
    + CheckedMul
    + FromPrimitive
    + ToPrimitive
    + fmt::Debug
    + fmt::Display
    + Send
    + Sync
{
}

impl<T> ExactScalar for T where
    T: Clone
        + Integer
        + CheckedAdd
        + CheckedSub
        + CheckedMul
        + FromPrimitive
        + ToPrimitive
        + fmt::Debug
        + fmt::Display
        + Send
        + Sync
{
}

pub(crate) fn lift<T: ExactScalar>(value: u64) -> Result<T> {
    T::from_u64(value).ok_or(Error::Overflow("integer conversion"))
}

pub(crate) fn add<T: ExactScalar>(a: &T, b: &T) -> Result<T> {
    a.checked_add(b).ok_or(Error::Overflow("sum"))
}

pub(crate) fn sub<T: ExactScalar>(a: &T, b: &T) -> Result<T> {
    a.checked_sub(b).ok_or(Error::Overflow("difference"))
}

pub(crate) fn mul<T: ExactScalar>(a: &T, b: &T) -> Result<T> {
    a.checked_mul(b).ok_or(Error::Overflow("product"))
}

/// `base^exp` by square-and-multiply.
pub(crate) fn pow<T: ExactScalar>(base: T, exp: u32) -> Result<T> {
    num_traits::checked_pow(base, exp as usize).ok_or(Error::Overflow("power"))
}

/// Residue of `value` modulo `modulus`, normalized to `[0, modulus)`.
pub(crate) fn residue<T: ExactScalar>(value: &T, modulus: u64) -> Result<u64> {
    let m: T = lift(modulus)?;
    value
        .mod_floor(&m)
        .to_u64()
        .ok_or(Error::Overflow("residue"))
}
