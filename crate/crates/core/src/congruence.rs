//! Residue-class predictions for power sums, and checks of observed sums
//! against them.
//!
//! For `k > 1` the classical sum satisfies
//!
//! ```text
//! 2 S_k(n) ≡ -2 Σ_{p|n, (p-1)|k} n/p          (mod 2n)   k even
//! 2 S_k(n) ≡ -k n Σ_{p|n, (p-1)|(k-1)} n/p    (mod n^2)  k odd
//! ```
//!
//! and for `k > 1`, `n > 1` the alternating sum satisfies
//!
//! ```text
//! A_k(n) ≡ 0              (mod n(n-1)/2)   k even, n odd
//! A_k(n) ≡ 0              (mod n-1)        k even, n even
//! A_k(n) ≡ ⌊n/2⌋^2        (mod 2⌊n/2⌋^2)   k odd
//! ```
//!
//! `k = 1` is outside both statements; use the closed form `A_1(n) = ⌊n/2⌋`.

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use crate::exact_sums::{alternating_sum, power, power_sum, PowerSumQuery};
use crate::modular::{self, mul_mod};
use crate::primes::{factorize, filtered_prime_sum_of, Factorization};
use crate::scalar::{residue, ExactScalar};
use crate::{Error, Result};

/// Largest `n` for which the checks reduce an exact sum; above it the
/// streaming residue path is used.
pub const EXACT_LHS_LIMIT: u64 = 1000;

/// Outcome of comparing an observed residue with a predicted one.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct CongruenceVerdict {
    pub modulus: u64,
    #[serde(rename = "lhs")]
    pub lhs_residue: u64,
    #[serde(rename = "rhs")]
    pub rhs_residue: u64,
    pub holds: bool,
}

impl CongruenceVerdict {
    pub fn new(modulus: u64, lhs_residue: u64, rhs_residue: u64) -> Self {
        Self {
            modulus,
            lhs_residue,
            rhs_residue,
            holds: lhs_residue == rhs_residue,
        }
    }
}

/// Which parity branch a prediction came from.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ParityCase {
    EvenExponentOddIndex,
    EvenExponentEvenIndex,
    OddExponent,
}

/// A predicted residue class `residue (mod modulus)`, residue in `[0, modulus)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Prediction {
    pub case: ParityCase,
    pub modulus: u64,
    pub residue: u64,
}

impl Prediction {
    /// Compares `observed mod modulus` with the predicted residue.
    pub fn verdict<T: ExactScalar>(&self, observed: &T) -> Result<CongruenceVerdict> {
        Ok(CongruenceVerdict::new(
            self.modulus,
            residue(observed, self.modulus)?,
            self.residue,
        ))
    }
}

/// Where the observed side of a check comes from.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LhsPath {
    /// Exact big-integer sum, reduced at the end.
    Exact,
    /// Term-by-term reduction on machine words.
    Streaming,
}

impl LhsPath {
    fn for_index(n: u64) -> Self {
        if n <= EXACT_LHS_LIMIT {
            LhsPath::Exact
        } else {
            LhsPath::Streaming
        }
    }
}

fn require_exponent(k: u32) -> Result<()> {
    if k <= 1 {
        return Err(Error::invalid(format!(
            "congruence needs k > 1, got k = {k}; use A_1(n) = floor(n/2) instead"
        )));
    }
    Ok(())
}

fn square(n: u64) -> Result<u64> {
    n.checked_mul(n).ok_or(Error::Overflow("modulus n^2"))
}

/// Predicted class of `2 S_k(n)`, from a factorization of `n`.
pub fn predict_power_sum_residue_with(k: u32, f: &Factorization) -> Result<Prediction> {
    require_exponent(k)?;
    let n = f.value();
    if k.is_multiple_of(2) {
        let modulus = n.checked_mul(2).ok_or(Error::Overflow("modulus 2n"))?;
        let sum = (filtered_prime_sum_of(f, u64::from(k)) % u128::from(modulus)) as u64;
        let twice = mul_mod(2, sum, modulus);
        Ok(Prediction {
            case: if n.is_multiple_of(2) {
                ParityCase::EvenExponentEvenIndex
            } else {
                ParityCase::EvenExponentOddIndex
            },
            modulus,
            residue: (modulus - twice) % modulus,
        })
    } else {
        let modulus = square(n)?;
        let sum = (filtered_prime_sum_of(f, u64::from(k - 1)) % u128::from(modulus)) as u64;
        let kn = mul_mod(u64::from(k) % modulus, n % modulus, modulus);
        let product = mul_mod(kn, sum, modulus);
        Ok(Prediction {
            case: ParityCase::OddExponent,
            modulus,
            residue: (modulus - product) % modulus,
        })
    }
}

/// Predicted class of `2 S_k(n)` for `k > 1`, `n >= 1`.
pub fn predict_power_sum_residue(k: u32, n: u64) -> Result<Prediction> {
    require_exponent(k)?;
    predict_power_sum_residue_with(k, &factorize(n)?)
}

/// Compares `2 S_k(n)` with its predicted class, reading the observed side from `path`.
pub fn check_power_sum_residue_via(k: u32, n: u64, path: LhsPath) -> Result<CongruenceVerdict> {
    let prediction = predict_power_sum_residue(k, n)?;
    let q = PowerSumQuery::new(k, n)?;
    let m = prediction.modulus;
    let observed = match path {
        LhsPath::Exact => residue(&(power_sum::<BigInt>(q)? * 2), m)?,
        LhsPath::Streaming => mul_mod(2, modular::power_sum_mod(q, m)?, m),
    };
    Ok(CongruenceVerdict::new(m, observed, prediction.residue))
}

pub fn check_power_sum_residue(k: u32, n: u64) -> Result<CongruenceVerdict> {
    check_power_sum_residue_via(k, n, LhsPath::for_index(n))
}

/// Predicted class of `A_k(n)` for `k > 1`, `n > 1`.
pub fn predict_alternating_residue(k: u32, n: u64) -> Result<Prediction> {
    require_exponent(k)?;
    if n <= 1 {
        return Err(Error::invalid(format!("congruence needs n > 1, got n = {n}")));
    }
    let prediction = match (k.is_multiple_of(2), n.is_multiple_of(2)) {
        (true, false) => Prediction {
            case: ParityCase::EvenExponentOddIndex,
            modulus: n
                .checked_mul((n - 1) / 2)
                .ok_or(Error::Overflow("modulus n(n-1)/2"))?,
            residue: 0,
        },
        (true, true) => Prediction {
            case: ParityCase::EvenExponentEvenIndex,
            modulus: n - 1,
            residue: 0,
        },
        (false, _) => {
            let half_sq = square(n / 2)?;
            Prediction {
                case: ParityCase::OddExponent,
                modulus: half_sq.checked_mul(2).ok_or(Error::Overflow("modulus"))?,
                residue: half_sq,
            }
        }
    };
    // n = 2 with k even gives modulus 1
    Ok(Prediction {
        residue: prediction.residue % prediction.modulus,
        ..prediction
    })
}

pub fn check_alternating_residue_via(k: u32, n: u64, path: LhsPath) -> Result<CongruenceVerdict> {
    let prediction = predict_alternating_residue(k, n)?;
    let q = PowerSumQuery::new(k, n)?;
    let m = prediction.modulus;
    let observed = match path {
        LhsPath::Exact => residue(&alternating_sum::<BigInt>(q)?, m)?,
        LhsPath::Streaming => modular::alternating_sum_mod(q, m)?,
    };
    Ok(CongruenceVerdict::new(m, observed, prediction.residue))
}

pub fn check_alternating_residue(k: u32, n: u64) -> Result<CongruenceVerdict> {
    check_alternating_residue_via(k, n, LhsPath::for_index(n))
}

fn require_odd_index(n: u64) -> Result<()> {
    if n < 3 || n.is_multiple_of(2) {
        return Err(Error::invalid(format!("needs odd n >= 3, got n = {n}")));
    }
    Ok(())
}

/// `A_k(n) = 2^{k+1} S_k((n-1)/2) - S_k(n-1) + (n-1)^k` from precomputed parts.
///
/// Checked in the form `A_k(n) + S_k(n-1) = 2^{k+1} S_k((n-1)/2) + (n-1)^k` so
/// no side goes negative.
pub fn halving_identity_holds_with<T: ExactScalar>(
    k: u32,
    n: u64,
    a_n: &T,
    s_half: &T,
    s_prev: &T,
) -> Result<bool> {
    let lhs = crate::scalar::add(a_n, s_prev)?;
    let scaled = crate::scalar::mul(&power::<T>(2, k + 1)?, s_half)?;
    let rhs = crate::scalar::add(&scaled, &power(n - 1, k)?)?;
    Ok(lhs == rhs)
}

/// Exact halving identity for `k > 1` and odd `n >= 3`.
pub fn halving_identity_holds(k: u32, n: u64) -> Result<bool> {
    require_exponent(k)?;
    require_odd_index(n)?;
    let a: BigInt = alternating_sum(PowerSumQuery::new(k, n)?)?;
    let s_half: BigInt = power_sum(PowerSumQuery::new(k, (n - 1) / 2)?)?;
    let s_prev: BigInt = power_sum(PowerSumQuery::new(k, n - 1)?)?;
    halving_identity_holds_with(k, n, &a, &s_half, &s_prev)
}

fn require_even_exponent(k: u32) -> Result<()> {
    require_exponent(k)?;
    if k % 2 == 1 {
        return Err(Error::invalid(format!("needs even k, got k = {k}")));
    }
    Ok(())
}

/// `2 A_k(n) ≡ 0 (mod n)` given `a_n = A_k(n)`.
pub fn reflection_holds_with<T: ExactScalar>(n: u64, a_n: &T) -> Result<bool> {
    let twice = crate::scalar::add(a_n, a_n)?;
    Ok(residue(&twice, n)? == 0)
}

/// Reflection congruence `2 A_k(n) ≡ 0 (mod n)` for even `k > 1` and odd `n >= 3`.
pub fn reflection_holds(k: u32, n: u64) -> Result<bool> {
    require_even_exponent(k)?;
    require_odd_index(n)?;
    let a: BigInt = alternating_sum(PowerSumQuery::new(k, n)?)?;
    reflection_holds_with(n, &a)
}

/// `p | 2^k - 1`, which Fermat's little theorem forces for odd primes with `(p - 1) | k`.
pub fn fermat_divides(p: u64, k: u64) -> bool {
    modular::pow_mod(2, k, p) == 1 % p
}
