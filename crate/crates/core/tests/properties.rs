//! Invariants of the sums and of the classification, checked against
//! straightforward reference computations.

use altsum::classification::{classify, predict_integer_ratio, Condition};
use altsum::congruence::fermat_divides;
use altsum::exact_sums::{alternating_ratio, alternating_sum, power_sum, PowerSumQuery};
use altsum::primes::{factorize, PrimeSieve};
use altsum::{ExactFraction, ExactInteger, ReducedFraction};
use num_bigint::BigInt;
use num_traits::{One, Zero};
use proptest::prelude::*;

fn q(k: u32, n: u64) -> PowerSumQuery {
    PowerSumQuery::new(k, n).unwrap()
}

fn pow(base: u64, k: u32) -> BigInt {
    num_traits::pow(BigInt::from(base), k as usize)
}

/// `1^k - 2^k + ... + (-1)^(n+1) n^k`, term by term.
fn original_alternating(k: u32, n: u64) -> BigInt {
    (1..=n).fold(BigInt::zero(), |acc, j| {
        if j % 2 == 1 {
            acc + pow(j, k)
        } else {
            acc - pow(j, k)
        }
    })
}

#[test]
fn empty_sums() {
    for k in 1..=50 {
        assert!(power_sum::<BigInt>(q(k, 1)).unwrap().is_zero());
        assert!(alternating_sum::<BigInt>(q(k, 1)).unwrap().is_zero());
    }
}

#[test]
fn trial_division_oracle_up_to_a_million() {
    // independent of both the sieve and the library's trial division
    fn naive(mut n: u64) -> Vec<(u64, u32)> {
        let mut out: Vec<(u64, u32)> = Vec::new();
        let mut d = 2;
        while d * d <= n {
            while n.is_multiple_of(d) {
                match out.last_mut() {
                    Some((p, e)) if *p == d => *e += 1,
                    _ => out.push((d, 1)),
                }
                n /= d;
            }
            d += 1;
        }
        if n > 1 {
            out.push((n, 1));
        }
        out
    }
    let sieve = PrimeSieve::new(1_000_000);
    for n in 1..=1_000_000u64 {
        let want = naive(n);
        assert_eq!(sieve.factorize(n).unwrap().factors(), want.as_slice(), "n={n}");
        if n % 101 == 0 {
            assert_eq!(factorize(n).unwrap().factors(), want.as_slice(), "n={n}");
        }
    }
}

#[test]
fn fermat_filter_on_scan_range() {
    let sieve = PrimeSieve::new(2000);
    for k in 1..=200u64 {
        for p in sieve.primes().skip(1).filter(|p| k % (p - 1) == 0) {
            assert!(fermat_divides(p, k), "p={p} k={k}");
        }
    }
}

#[test]
fn second_index_ratio_is_mersenne() {
    for k in 1..=120 {
        let r: ExactFraction = alternating_ratio(k, 2).unwrap();
        assert_eq!(r, ReducedFraction::from_integer(pow(2, k) - 1));
        assert_eq!(predict_integer_ratio(k, 2).unwrap(), (true, Condition::SecondIndex));
    }
}

#[test]
fn linear_ratios() {
    for n in 2..=3000u64 {
        let r: ExactFraction = alternating_ratio(1, n).unwrap();
        if n % 2 == 0 {
            assert_eq!(r, ReducedFraction::from_integer(BigInt::one()));
        } else {
            // before reduction: ((n+1)/2) / ((n-1)/2)
            let a_n: BigInt = alternating_sum(q(1, n)).unwrap();
            let a_next: BigInt = alternating_sum(q(1, n + 1)).unwrap();
            assert_eq!(a_n, BigInt::from((n - 1) / 2));
            assert_eq!(a_next, BigInt::from(n.div_ceil(2)));
            assert_eq!(r.is_integer(), n == 3, "n={n}");
        }
    }
}

proptest! {
    #[test]
    fn sign_reformulation(k in 1u32..25, n in 1u64..150) {
        let a_next: BigInt = alternating_sum(q(k, n + 1)).unwrap();
        let sign = if n % 2 == 0 { -BigInt::one() } else { BigInt::one() };
        prop_assert_eq!(sign * a_next, original_alternating(k, n));
    }

    #[test]
    fn prediction_matches_exact_ratio(k in 1u32..60, n in 2u64..400) {
        let record = classify::<ExactInteger>(k, n).unwrap();
        prop_assert!(record.agrees());
        prop_assert_eq!(record.predicted_integer, record.condition != Condition::None);
        prop_assert_eq!(record.actual_integer, record.ratio.is_integer());
        if let Some(c) = &record.cofactor {
            let a_n: BigInt = alternating_sum(q(k, n)).unwrap();
            prop_assert_eq!(c * a_n, pow(n, k));
        }
    }

    #[test]
    fn fixed_width_classification_matches_exact(k in 1u32..8, n in 2u64..200) {
        let wide = classify::<i128>(k, n).unwrap();
        let exact = classify::<ExactInteger>(k, n).unwrap();
        prop_assert_eq!(wide.actual_integer, exact.actual_integer);
        prop_assert_eq!(wide.ratio.to_string(), exact.ratio.to_string());
    }
}
