//! Fractions kept in lowest terms with a positive denominator.

use std::fmt;

use crate::scalar::ExactScalar;
use crate::{Error, Result};

/// A fraction `numer / denom` with `denom > 0` and `gcd(|numer|, denom) = 1`.
///
/// Reduction happens once, on construction, so two fractions are equal exactly
/// when their fields are equal and integrality is `denom == 1`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ReducedFraction<T> {
    numer: T,
    denom: T,
}

impl<T: ExactScalar> ReducedFraction<T> {
    pub fn new(numer: T, denom: T) -> Result<Self> {
        if denom <= T::zero() {
            return Err(Error::invalid(format!(
                "fraction denominator must be positive, got {denom}"
            )));
        }
        let g = numer.gcd(&denom);
        if g.is_one() {
            return Ok(Self { numer, denom });
        }
        Ok(Self {
            numer: numer / g.clone(),
            denom: denom / g,
        })
    }

    pub fn from_integer(value: T) -> Self {
        Self {
            numer: value,
            denom: T::one(),
        }
    }

    pub fn numer(&self) -> &T {
        &self.numer
    }

    pub fn denom(&self) -> &T {
        &self.denom
    }

    pub fn is_integer(&self) -> bool {
        self.denom.is_one()
    }

    /// The integer value, when the fraction is one.
    pub fn to_integer(&self) -> Option<&T> {
        self.is_integer().then_some(&self.numer)
    }

    pub fn into_parts(self) -> (T, T) {
        (self.numer, self.denom)
    }
}

impl<T: fmt::Display> fmt::Display for ReducedFraction<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.numer, self.denom)
    }
}
