//! Which ratios `A_k(n+1) / A_k(n)` are integers.
//!
//! For `k >= 1` and `n > 1` the ratio is an integer exactly when one of
//!
//! * (A) `n = 2`,
//! * (B) `k = 1` and `n` is even,
//! * (C) `k ∈ {1, 2}` and `n = 3`
//!
//! holds. This module evaluates that predicate, computes the exact ratio as
//! ground truth, and exposes the intermediate facts the classification rests
//! on so each can be checked numerically. It also scans the classical ratio
//! `S_k(n+1) / S_k(n)`, which is conjectured to be an integer for `n >= 3`
//! only at `(k, n) = (1, 3)` and `(3, 3)`.

use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::exact_sums::{alternating_sum, power, PowerSumQuery, RunningSums};
use crate::fraction::ReducedFraction;
use crate::scalar::{self, ExactScalar};
use crate::{Error, Result};

/// The condition under which an integer ratio is predicted.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Condition {
    /// `n = 2`.
    #[serde(rename = "A")]
    SecondIndex,
    /// `k = 1` and `n` even.
    #[serde(rename = "B")]
    LinearEvenIndex,
    /// `k ∈ {1, 2}` and `n = 3`.
    #[serde(rename = "C")]
    SmallExponentThirdIndex,
    #[serde(rename = "NONE")]
    None,
}

impl Condition {
    pub fn label(self) -> &'static str {
        match self {
            Condition::SecondIndex => "A",
            Condition::LinearEvenIndex => "B",
            Condition::SmallExponentThirdIndex => "C",
            Condition::None => "NONE",
        }
    }
}

impl fmt::Display for Condition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

fn require_ratio_domain(k: u32, n: u64) -> Result<()> {
    if k < 1 {
        return Err(Error::invalid("exponent k must be at least 1"));
    }
    if n < 2 {
        return Err(Error::invalid(format!(
            "ratio undefined for n = {n}: A_k(1) = 0"
        )));
    }
    Ok(())
}

/// Predicted integrality with the first matching condition, checked in order A, B, C.
pub fn predict_integer_ratio(k: u32, n: u64) -> Result<(bool, Condition)> {
    require_ratio_domain(k, n)?;
    let condition = if n == 2 {
        Condition::SecondIndex
    } else if k == 1 && n.is_multiple_of(2) {
        Condition::LinearEvenIndex
    } else if (k == 1 || k == 2) && n == 3 {
        Condition::SmallExponentThirdIndex
    } else {
        Condition::None
    };
    Ok((condition != Condition::None, condition))
}

/// Prediction and ground truth for one `(k, n)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClassificationRecord<T> {
    pub k: u32,
    pub n: u64,
    pub predicted_integer: bool,
    pub condition: Condition,
    pub actual_integer: bool,
    pub ratio: ReducedFraction<T>,
    /// `c` with `c * A_k(n) = n^k`, present when the ratio is an integer and `n > 2`.
    pub cofactor: Option<T>,
}

impl<T: ExactScalar> ClassificationRecord<T> {
    /// Builds a record from `A_k(n)` and `n^k`; `A_k(n+1)` is their difference.
    pub fn from_sums(k: u32, n: u64, a_n: &T, n_pow: &T) -> Result<Self> {
        let (predicted_integer, condition) = predict_integer_ratio(k, n)?;
        let a_next = scalar::sub(n_pow, a_n)?;
        let ratio = ReducedFraction::new(a_next, a_n.clone())?;
        let actual_integer = ratio.is_integer();
        let cofactor = (actual_integer && n > 2).then(|| n_pow.div_floor(a_n));
        Ok(Self {
            k,
            n,
            predicted_integer,
            condition,
            actual_integer,
            ratio,
            cofactor,
        })
    }

    /// Whether the prediction matches the exact ratio.
    pub fn agrees(&self) -> bool {
        self.predicted_integer == self.actual_integer
    }
}

/// Classifies one `(k, n)` from scratch.
pub fn classify<T: ExactScalar>(k: u32, n: u64) -> Result<ClassificationRecord<T>> {
    require_ratio_domain(k, n)?;
    let a_n: T = alternating_sum(PowerSumQuery::new(k, n)?)?;
    ClassificationRecord::from_sums(k, n, &a_n, &power(n, k)?)
}

/// `m` with `value = 3^m`, found by repeated exact division by 3.
pub fn power_of_three_exponent(value: &BigUint) -> Option<u32> {
    if value.is_zero() {
        return None;
    }
    let three = BigUint::from(3u32);
    let mut rest = value.clone();
    let mut m = 0;
    while !rest.is_one() {
        let (q, r) = rest.div_rem(&three);
        if !r.is_zero() {
            return None;
        }
        rest = q;
        m += 1;
    }
    Some(m)
}

/// `m >= 1` with `2^k - 1 = 3^m`, by exact division of `2^k - 1`.
pub fn power_of_three_obstruction_exact(k: u32) -> Option<u32> {
    let mersenne = (BigUint::one() << k) - 1u32;
    power_of_three_exponent(&mersenne).filter(|&m| m >= 1)
}

/// `m >= 1` with `2^k - 1 = 3^m`, if any.
///
/// Powers of 3 are 1 or 3 mod 8 while `2^k - 1 ≡ 7 (mod 8)` for `k >= 3`, so
/// only `k < 3` reaches the exact division.
pub fn power_of_three_obstruction(k: u32) -> Option<u32> {
    if k >= 3 {
        return None;
    }
    power_of_three_obstruction_exact(k)
}

/// `A_k(n) > (n/2)^k` for odd `k >= 3` and even `n >= 4`.
pub fn strict_inequality_holds(k: u32, n: u64) -> Result<bool> {
    if k < 3 || k.is_multiple_of(2) {
        return Err(Error::invalid(format!("needs odd k >= 3, got k = {k}")));
    }
    if n < 4 || n % 2 == 1 {
        return Err(Error::invalid(format!("needs even n >= 4, got n = {n}")));
    }
    let a: BigInt = alternating_sum(PowerSumQuery::new(k, n)?)?;
    Ok(a > power::<BigInt>(n / 2, k)?)
}

/// One integer classical ratio `S_k(n+1) / S_k(n) = value`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct KellnerHit {
    pub k: u32,
    pub n: u64,
    pub value: BigInt,
}

impl KellnerHit {
    /// Whether this hit is one of the two conjectured ones.
    pub fn is_expected(&self) -> bool {
        self.n == 3 && (self.k == 1 || self.k == 3)
    }
}

/// Integer classical ratios for one exponent and `n_min <= n <= n_max`, with
/// running sums `S_k(n+1) = S_k(n) + n^k`.
pub fn kellner_row(k: u32, n_min: u64, n_max: u64) -> Result<Vec<KellnerHit>> {
    if n_min < 2 {
        return Err(Error::invalid("classical ratio needs n >= 2"));
    }
    let mut run = RunningSums::<BigInt>::new(k)?;
    run.advance_to(n_min)?;
    let mut hits = Vec::new();
    while run.n() <= n_max {
        let n = run.n();
        let s_n = run.power_sum().clone();
        run.advance()?;
        let (q, r) = run.power_sum().div_rem(&s_n);
        if r.is_zero() {
            hits.push(KellnerHit { k, n, value: q });
        }
    }
    Ok(hits)
}

/// All integer classical ratios for `1 <= k <= k_max`, `3 <= n <= n_max`, ordered by `(k, n)`.
pub fn kellner_scan(k_max: u32, n_max: u64) -> Result<Vec<KellnerHit>> {
    if k_max < 1 || n_max < 3 {
        return Err(Error::invalid("scan needs k_max >= 1 and n_max >= 3"));
    }
    let mut hits = Vec::new();
    for k in 1..=k_max {
        hits.extend(kellner_row(k, 3, n_max)?);
    }
    Ok(hits)
}
