//! Streaming residues of power sums on machine words.
//!
//! These never materialize the exact sums: every term is reduced as it is
//! produced, with `u128` intermediates for products. They are the fast path
//! behind the congruence checks for large `n` and must agree with the exact
//! kernels reduced at the end.

use crate::exact_sums::PowerSumQuery;
use crate::{Error, Result};

pub fn mul_mod(a: u64, b: u64, modulus: u64) -> u64 {
    ((a as u128 * b as u128) % modulus as u128) as u64
}

pub fn pow_mod(base: u64, mut exp: u64, modulus: u64) -> u64 {
    if modulus == 1 {
        return 0;
    }
    let mut base = base % modulus;
    let mut acc = 1u64;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, modulus);
        }
        base = mul_mod(base, base, modulus);
        exp >>= 1;
    }
    acc
}

fn check_modulus(modulus: u64) -> Result<()> {
    if modulus == 0 {
        return Err(Error::invalid("modulus must be positive"));
    }
    Ok(())
}

fn add_mod(a: u64, b: u64, modulus: u64) -> u64 {
    ((a as u128 + b as u128) % modulus as u128) as u64
}

fn sub_mod(a: u64, b: u64, modulus: u64) -> u64 {
    if a >= b {
        a - b
    } else {
        modulus - (b - a)
    }
}

/// `S_k(n) mod modulus`.
pub fn power_sum_mod(q: PowerSumQuery, modulus: u64) -> Result<u64> {
    check_modulus(modulus)?;
    let k = u64::from(q.k());
    Ok((1..q.n()).fold(0, |acc, j| add_mod(acc, pow_mod(j, k, modulus), modulus)))
}

/// `A_k(n) mod modulus`, paired from the top term down like the exact kernel.
pub fn alternating_sum_mod(q: PowerSumQuery, modulus: u64) -> Result<u64> {
    check_modulus(modulus)?;
    let k = u64::from(q.k());
    let mut acc = 0;
    let mut m = q.n() - 1;
    while m >= 2 {
        let pair = sub_mod(pow_mod(m, k, modulus), pow_mod(m - 1, k, modulus), modulus);
        acc = add_mod(acc, pair, modulus);
        m -= 2;
    }
    if m == 1 {
        acc = add_mod(acc, 1 % modulus, modulus);
    }
    Ok(acc)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact_sums::{alternating_sum, power_sum};
    use num_bigint::BigInt;
    use num_traits::ToPrimitive;
    use proptest::prelude::*;

    #[test]
    fn pow_mod_small_cases() {
        assert_eq!(pow_mod(2, 10, 1000), 24);
        assert_eq!(pow_mod(7, 0, 13), 1);
        assert_eq!(pow_mod(7, 5, 1), 0);
        assert_eq!(pow_mod(u64::MAX, 2, u64::MAX - 1), 1);
    }

    #[test]
    fn zero_modulus_rejected() {
        let q = PowerSumQuery::new(2, 5).unwrap();
        assert!(power_sum_mod(q, 0).is_err());
        assert!(alternating_sum_mod(q, 0).is_err());
    }

    #[test]
    fn unit_modulus_gives_zero() {
        let q = PowerSumQuery::new(3, 9).unwrap();
        assert_eq!(power_sum_mod(q, 1).unwrap(), 0);
        assert_eq!(alternating_sum_mod(q, 1).unwrap(), 0);
    }

    proptest! {
        #[test]
        fn agrees_with_exact_reduction(k in 1u32..25, n in 1u64..200, m in 1u64..u64::MAX) {
            let q = PowerSumQuery::new(k, n).unwrap();
            let big_m = BigInt::from(m);
            let s: BigInt = power_sum(q).unwrap();
            let a: BigInt = alternating_sum(q).unwrap();
            prop_assert_eq!(power_sum_mod(q, m).unwrap(), (s % &big_m).to_u64().unwrap());
            prop_assert_eq!(alternating_sum_mod(q, m).unwrap(), (a % &big_m).to_u64().unwrap());
        }
    }
}
