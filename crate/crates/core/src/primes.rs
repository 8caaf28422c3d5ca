//! Prime sieve, factorization, and filtered prime sums `Σ n/p` over primes
//! `p | n` with `(p - 1) | d`.

use crate::{Error, Result};

/// `value = Π p^e` with primes strictly increasing and every exponent `>= 1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Factorization {
    value: u64,
    factors: Vec<(u64, u32)>,
}

impl Factorization {
    pub fn value(&self) -> u64 {
        self.value
    }

    pub fn factors(&self) -> &[(u64, u32)] {
        &self.factors
    }

    /// Distinct prime divisors, ascending.
    pub fn primes(&self) -> impl Iterator<Item = u64> + '_ {
        self.factors.iter().map(|&(p, _)| p)
    }

    /// Multiplies the factors back out.
    pub fn product(&self) -> u128 {
        self.factors
            .iter()
            .map(|&(p, e)| u128::from(p).pow(e))
            .product()
    }

    fn push(&mut self, p: u64) {
        match self.factors.last_mut() {
            Some((q, e)) if *q == p => *e += 1,
            _ => self.factors.push((p, 1)),
        }
    }
}

fn check_positive(n: u64) -> Result<()> {
    if n == 0 {
        return Err(Error::invalid("cannot factorize 0"));
    }
    Ok(())
}

fn trial_division_from(mut rest: u64, mut out: Factorization) -> Factorization {
    let mut p = 2u64;
    while p.saturating_mul(p) <= rest {
        while rest.is_multiple_of(p) {
            out.push(p);
            rest /= p;
        }
        p += if p == 2 { 1 } else { 2 };
    }
    if rest > 1 {
        out.push(rest);
    }
    out
}

/// Factorization by trial division.
pub fn factorize(n: u64) -> Result<Factorization> {
    check_positive(n)?;
    Ok(trial_division_from(
        n,
        Factorization {
            value: n,
            factors: Vec::new(),
        },
    ))
}

/// Least-prime-factor table up to a fixed limit.
///
/// Built once and read-only afterwards, so one sieve can be shared by every
/// worker of a scan. Queries above the limit fall back to trial division.
#[derive(Clone, Debug)]
pub struct PrimeSieve {
    least_factor: Vec<u32>,
    primes: Vec<u32>,
}

impl PrimeSieve {
    pub fn new(limit: u32) -> Self {
        let len = limit as usize + 1;
        let mut least_factor = vec![0u32; len];
        let mut primes = Vec::new();
        // linear sieve: every composite is crossed out once, by its least factor
        for i in 2..len {
            if least_factor[i] == 0 {
                least_factor[i] = i as u32;
                primes.push(i as u32);
            }
            let lf = least_factor[i];
            for &p in &primes {
                let c = i * p as usize;
                if p > lf || c >= len {
                    break;
                }
                least_factor[c] = p;
            }
        }
        Self {
            least_factor,
            primes,
        }
    }

    pub fn limit(&self) -> u64 {
        (self.least_factor.len() - 1) as u64
    }

    pub fn primes(&self) -> impl Iterator<Item = u64> + '_ {
        self.primes.iter().map(|&p| u64::from(p))
    }

    pub fn is_prime(&self, n: u64) -> bool {
        if n <= self.limit() {
            n >= 2 && u64::from(self.least_factor[n as usize]) == n
        } else {
            factorize(n).map(|f| f.factors == [(n, 1)]).unwrap_or(false)
        }
    }

    pub fn factorize(&self, n: u64) -> Result<Factorization> {
        check_positive(n)?;
        let mut out = Factorization {
            value: n,
            factors: Vec::new(),
        };
        if n > self.limit() {
            return Ok(trial_division_from(n, out));
        }
        let mut rest = n as usize;
        while rest > 1 {
            let p = self.least_factor[rest];
            out.push(u64::from(p));
            rest /= p as usize;
        }
        Ok(out)
    }
}

/// `Σ n/p` over primes `p` of the factorization with `(p - 1) | d`.
pub fn filtered_prime_sum_of(f: &Factorization, d: u64) -> u128 {
    f.primes()
        .filter(|&p| d.is_multiple_of(p - 1))
        .map(|p| u128::from(f.value / p))
        .sum()
}

/// `Σ n/p` over primes `p | n` with `(p - 1) | d`; zero when no prime qualifies.
pub fn filtered_prime_sum(n: u64, d: u64) -> Result<u128> {
    if d == 0 {
        return Err(Error::invalid("divisor filter d must be at least 1"));
    }
    Ok(filtered_prime_sum_of(&factorize(n)?, d))
}
