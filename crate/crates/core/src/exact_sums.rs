//! Exact evaluation of classical and alternating power sums.
//!
//! With the upper index excluded:
//!
//! ```text
//! S_k(n) = 1^k + 2^k + ... + (n-1)^k
//! A_k(n) = (n-1)^k - (n-2)^k + (n-3)^k - ... ± 1^k
//! ```
//!
//! Both are zero for `n = 1`. `A_k(n)` is positive for `n > 1`, and
//! `A_k(n+1) = n^k - A_k(n)`.

use crate::fraction::ReducedFraction;
use crate::scalar::{self, lift, ExactScalar};
use crate::{Error, Result};

/// One sum instance: exponent `k >= 1` and upper index `n >= 1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PowerSumQuery {
    k: u32,
    n: u64,
}

impl PowerSumQuery {
    pub fn new(k: u32, n: u64) -> Result<Self> {
        if k < 1 {
            return Err(Error::invalid("exponent k must be at least 1"));
        }
        if n < 1 {
            return Err(Error::invalid("upper index n must be at least 1"));
        }
        Ok(Self { k, n })
    }

    pub fn k(&self) -> u32 {
        self.k
    }

    pub fn n(&self) -> u64 {
        self.n
    }
}

/// `base^k` in the target scalar.
pub fn power<T: ExactScalar>(base: u64, k: u32) -> Result<T> {
    scalar::pow(lift(base)?, k)
}

/// `S_k(n)`, the sum of `j^k` for `1 <= j < n`.
pub fn power_sum<T: ExactScalar>(q: PowerSumQuery) -> Result<T> {
    let mut total = T::zero();
    for j in 1..q.n {
        total = scalar::add(&total, &power(j, q.k)?)?;
    }
    Ok(total)
}

/// `A_k(n)`.
///
/// Evaluated from the top term down in pairs `m^k - (m-1)^k`, each of which is
/// nonnegative, so unsigned scalars work and no partial sum goes negative.
pub fn alternating_sum<T: ExactScalar>(q: PowerSumQuery) -> Result<T> {
    let mut total = T::zero();
    let mut m = q.n - 1;
    while m >= 2 {
        let pair = scalar::sub(&power::<T>(m, q.k)?, &power(m - 1, q.k)?)?;
        total = scalar::add(&total, &pair)?;
        m -= 2;
    }
    if m == 1 {
        total = scalar::add(&total, &T::one())?;
    }
    Ok(total)
}

/// `n^k - a_n`, which is `A_k(n+1)` when `a_n = A_k(n)`.
pub fn next_alternating<T: ExactScalar>(k: u32, n: u64, a_n: &T) -> Result<T> {
    scalar::sub(&power(n, k)?, a_n)
}

fn ratio_query(k: u32, n: u64) -> Result<(PowerSumQuery, PowerSumQuery)> {
    if n < 2 {
        return Err(Error::invalid(format!(
            "ratio needs n >= 2 so the denominator is nonzero, got n = {n}"
        )));
    }
    let next = n.checked_add(1).ok_or(Error::Overflow("upper index"))?;
    Ok((PowerSumQuery::new(k, n)?, PowerSumQuery::new(k, next)?))
}

/// `A_k(n+1) / A_k(n)` in lowest terms. Requires `n >= 2`.
pub fn alternating_ratio<T: ExactScalar>(k: u32, n: u64) -> Result<ReducedFraction<T>> {
    let (q, _) = ratio_query(k, n)?;
    let a_n: T = alternating_sum(q)?;
    let a_next = next_alternating(k, n, &a_n)?;
    ReducedFraction::new(a_next, a_n)
}

/// `S_k(n+1) / S_k(n)` in lowest terms. Requires `n >= 2`.
pub fn classical_ratio<T: ExactScalar>(k: u32, n: u64) -> Result<ReducedFraction<T>> {
    let (q, _) = ratio_query(k, n)?;
    let s_n: T = power_sum(q)?;
    let s_next = scalar::add(&s_n, &power(n, k)?)?;
    ReducedFraction::new(s_next, s_n)
}

/// Running `S_k(n)` and `A_k(n)` for one exponent, advanced one index at a time.
///
/// Each step costs one power evaluation, which is what makes whole-row scans
/// linear in the row length.
#[derive(Clone, Debug)]
pub struct RunningSums<T> {
    k: u32,
    n: u64,
    power_sum: T,
    alternating_sum: T,
}

impl<T: ExactScalar> RunningSums<T> {
    /// Starts at `n = 1`, where both sums are empty.
    pub fn new(k: u32) -> Result<Self> {
        PowerSumQuery::new(k, 1)?;
        Ok(Self {
            k,
            n: 1,
            power_sum: T::zero(),
            alternating_sum: T::zero(),
        })
    }

    pub fn k(&self) -> u32 {
        self.k
    }

    pub fn n(&self) -> u64 {
        self.n
    }

    pub fn power_sum(&self) -> &T {
        &self.power_sum
    }

    pub fn alternating_sum(&self) -> &T {
        &self.alternating_sum
    }

    /// Moves from `n` to `n + 1` and returns the term `n^k` that was folded in.
    pub fn advance(&mut self) -> Result<T> {
        let term: T = power(self.n, self.k)?;
        self.power_sum = scalar::add(&self.power_sum, &term)?;
        self.alternating_sum = scalar::sub(&term, &self.alternating_sum)?;
        self.n += 1;
        Ok(term)
    }

    /// Advances until the upper index equals `n`. Never moves backwards.
    pub fn advance_to(&mut self, n: u64) -> Result<()> {
        while self.n < n {
            self.advance()?;
        }
        Ok(())
    }
}
