use std::fmt;
use std::str::FromStr;
use std::time::Instant;

use num_bigint::BigInt;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::classification::{kellner_row, ClassificationRecord, KellnerHit};
use crate::congruence::{
    halving_identity_holds_with, predict_alternating_residue, predict_power_sum_residue_with,
    reflection_holds_with, CongruenceVerdict,
};
use crate::exact_sums::RunningSums;
use crate::modular::mul_mod;
use crate::primes::PrimeSieve;
use crate::scalar::residue;
use crate::{Error, ExactRecord, Result};

/// Environment variable that overrides the default worker count.
pub const WORKERS_ENV: &str = "ALTSUM_JOBS";

/// Worker count from [`WORKERS_ENV`], else the available parallelism.
pub fn default_workers() -> usize {
    std::env::var(WORKERS_ENV)
        .ok()
        .and_then(|v| v.trim().parse().ok())
        .filter(|&w| w > 0)
        .unwrap_or_else(|| std::thread::available_parallelism().map_or(1, |n| n.get()))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ScanKind {
    /// Predicted vs. exact integrality of `A_k(n+1) / A_k(n)`.
    Theorem,
    /// Residue class of `2 S_k(n)`.
    Lemma1,
    /// Residue class of `A_k(n)`.
    Lemma2,
    /// Integer classical ratios `S_k(n+1) / S_k(n)`.
    Kellner,
    /// Halving identity and reflection congruence.
    Identities,
}

impl ScanKind {
    pub fn name(self) -> &'static str {
        match self {
            ScanKind::Theorem => "theorem",
            ScanKind::Lemma1 => "lemma1",
            ScanKind::Lemma2 => "lemma2",
            ScanKind::Kellner => "kellner",
            ScanKind::Identities => "identities",
        }
    }

    /// Smallest admissible `(k, n)` for this kind.
    fn minimums(self) -> (u32, u64) {
        match self {
            ScanKind::Theorem => (1, 2),
            ScanKind::Lemma1 => (2, 1),
            ScanKind::Lemma2 => (2, 2),
            ScanKind::Kellner => (1, 3),
            ScanKind::Identities => (2, 3),
        }
    }
}

impl fmt::Display for ScanKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for ScanKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "theorem" => ScanKind::Theorem,
            "lemma1" => ScanKind::Lemma1,
            "lemma2" => ScanKind::Lemma2,
            "kellner" => ScanKind::Kellner,
            "identities" => ScanKind::Identities,
            other => return Err(Error::invalid(format!("unknown scan kind {other:?}"))),
        })
    }
}

/// Property that failed at a cell.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Property {
    /// Predicted integrality differs from the exact ratio.
    Classification,
    Positivity,
    LowerBound,
    /// `c * A_k(n) != n^k` for the recorded cofactor.
    Cofactor,
    Congruence,
    HalvingIdentity,
    Reflection,
    /// An integer classical ratio other than `(1, 3)` and `(3, 3)`.
    UnexpectedClassicalHit,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Violation {
    pub k: u32,
    pub n: u64,
    pub property: Property,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct CongruenceRecord {
    pub k: u32,
    pub n: u64,
    pub verdict: CongruenceVerdict,
}

/// Identity checks at one odd `n`; `reflection` is `None` for odd `k`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct IdentityRecord {
    pub k: u32,
    pub n: u64,
    pub halving: bool,
    pub reflection: Option<bool>,
}

/// Per-kind records, sorted ascending by `(k, n)`.
#[derive(Clone, Debug, PartialEq)]
pub enum Records {
    Theorem(Vec<ExactRecord>),
    Lemma1(Vec<CongruenceRecord>),
    Lemma2(Vec<CongruenceRecord>),
    /// Only the cells whose classical ratio is an integer.
    Kellner(Vec<KellnerHit>),
    /// Only odd `n`; even `n` is skipped.
    Identities(Vec<IdentityRecord>),
}

impl Records {
    pub fn kind(&self) -> ScanKind {
        match self {
            Records::Theorem(_) => ScanKind::Theorem,
            Records::Lemma1(_) => ScanKind::Lemma1,
            Records::Lemma2(_) => ScanKind::Lemma2,
            Records::Kellner(_) => ScanKind::Kellner,
            Records::Identities(_) => ScanKind::Identities,
        }
    }

    pub fn len(&self) -> usize {
        match self {
            Records::Theorem(r) => r.len(),
            Records::Lemma1(r) | Records::Lemma2(r) => r.len(),
            Records::Kellner(r) => r.len(),
            Records::Identities(r) => r.len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// `(k, n)` of every record, in order.
    pub fn cells(&self) -> Vec<(u32, u64)> {
        match self {
            Records::Theorem(r) => r.iter().map(|x| (x.k, x.n)).collect(),
            Records::Lemma1(r) | Records::Lemma2(r) => r.iter().map(|x| (x.k, x.n)).collect(),
            Records::Kellner(r) => r.iter().map(|x| (x.k, x.n)).collect(),
            Records::Identities(r) => r.iter().map(|x| (x.k, x.n)).collect(),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct ScanReport {
    pub k_range: (u32, u32),
    pub n_range: (u64, u64),
    pub records: Records,
    pub violations: Vec<Violation>,
    /// Cells whose properties were evaluated.
    pub cells_evaluated: u64,
    /// Cells outside a property's hypothesis (even `n` in identity scans).
    pub cells_skipped: u64,
    pub elapsed_seconds: f64,
    pub worker_count: usize,
}

impl ScanReport {
    pub fn kind(&self) -> ScanKind {
        self.records.kind()
    }

    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }

    /// Number of cells in the inclusive grid.
    pub fn grid_size(&self) -> u64 {
        u64::from(self.k_range.1 - self.k_range.0 + 1) * (self.n_range.1 - self.n_range.0 + 1)
    }
}

struct Row<R> {
    records: Vec<R>,
    violations: Vec<Violation>,
    evaluated: u64,
    skipped: u64,
}

impl<R> Row<R> {
    fn new() -> Self {
        Self {
            records: Vec::new(),
            violations: Vec::new(),
            evaluated: 0,
            skipped: 0,
        }
    }

    fn flag(&mut self, k: u32, n: u64, property: Property) {
        self.violations.push(Violation { k, n, property });
    }
}

fn validate(kind: ScanKind, k_range: (u32, u32), n_range: (u64, u64), workers: usize) -> Result<()> {
    let (k_min, n_min) = kind.minimums();
    if k_range.0 > k_range.1 || n_range.0 > n_range.1 {
        return Err(Error::invalid(format!(
            "empty range: k in [{}, {}], n in [{}, {}]",
            k_range.0, k_range.1, n_range.0, n_range.1
        )));
    }
    if k_range.0 < k_min || n_range.0 < n_min {
        return Err(Error::invalid(format!(
            "{kind} scan needs k >= {k_min} and n >= {n_min}, got k >= {} and n >= {}",
            k_range.0, n_range.0
        )));
    }
    if n_range.1 == u64::MAX {
        return Err(Error::invalid("n range too large"));
    }
    if workers == 0 {
        return Err(Error::invalid("worker count must be at least 1"));
    }
    Ok(())
}

fn theorem_row(k: u32, (lo, hi): (u64, u64)) -> Result<Row<ExactRecord>> {
    let mut row = Row::new();
    let mut run = RunningSums::<BigInt>::new(k)?;
    run.advance_to(lo)?;
    while run.n() <= hi {
        let n = run.n();
        let a_n = run.alternating_sum().clone();
        let n_pow = run.advance()?;
        let record = ClassificationRecord::from_sums(k, n, &a_n, &n_pow)?;
        row.evaluated += 1;
        if !record.agrees() {
            row.flag(k, n, Property::Classification);
        }
        if a_n <= BigInt::ZERO {
            row.flag(k, n, Property::Positivity);
        }
        // (n-1)/2 for odd n and n/2 for even n are both floor(n/2)
        if a_n < BigInt::from(n / 2) {
            row.flag(k, n, Property::LowerBound);
        }
        if let Some(c) = &record.cofactor {
            if c * &a_n != n_pow {
                row.flag(k, n, Property::Cofactor);
            }
        }
        row.records.push(record);
    }
    Ok(row)
}

fn power_sum_residue_row(k: u32, (lo, hi): (u64, u64), sieve: &PrimeSieve) -> Result<Row<CongruenceRecord>> {
    let mut row = Row::new();
    let mut run = RunningSums::<BigInt>::new(k)?;
    run.advance_to(lo)?;
    while run.n() <= hi {
        let n = run.n();
        let prediction = predict_power_sum_residue_with(k, &sieve.factorize(n)?)?;
        let m = prediction.modulus;
        let observed = mul_mod(2, residue(run.power_sum(), m)?, m);
        let verdict = CongruenceVerdict::new(m, observed, prediction.residue);
        row.evaluated += 1;
        if !verdict.holds {
            row.flag(k, n, Property::Congruence);
        }
        row.records.push(CongruenceRecord { k, n, verdict });
        run.advance()?;
    }
    Ok(row)
}

fn alternating_residue_row(k: u32, (lo, hi): (u64, u64)) -> Result<Row<CongruenceRecord>> {
    let mut row = Row::new();
    let mut run = RunningSums::<BigInt>::new(k)?;
    run.advance_to(lo)?;
    while run.n() <= hi {
        let n = run.n();
        let verdict = predict_alternating_residue(k, n)?.verdict(run.alternating_sum())?;
        row.evaluated += 1;
        if !verdict.holds {
            row.flag(k, n, Property::Congruence);
        }
        row.records.push(CongruenceRecord { k, n, verdict });
        run.advance()?;
    }
    Ok(row)
}

fn kellner_scan_row(k: u32, (lo, hi): (u64, u64)) -> Result<Row<KellnerHit>> {
    let mut row = Row::new();
    row.records = kellner_row(k, lo, hi)?;
    row.evaluated = hi - lo + 1;
    let unexpected: Vec<_> = row
        .records
        .iter()
        .filter(|h| !h.is_expected())
        .map(|h| (h.k, h.n))
        .collect();
    for (k, n) in unexpected {
        row.flag(k, n, Property::UnexpectedClassicalHit);
    }
    Ok(row)
}

fn identity_row(k: u32, (lo, hi): (u64, u64)) -> Result<Row<IdentityRecord>> {
    let mut row = Row::new();
    let mut run = RunningSums::<BigInt>::new(k)?;
    // power_sums[m] = S_k(m)
    let mut power_sums = vec![BigInt::ZERO];
    loop {
        let n = run.n();
        power_sums.push(run.power_sum().clone());
        if n >= lo {
            if n % 2 == 0 {
                row.skipped += 1;
            } else {
                let a_n = run.alternating_sum();
                let halving = halving_identity_holds_with(
                    k,
                    n,
                    a_n,
                    &power_sums[((n - 1) / 2) as usize],
                    &power_sums[(n - 1) as usize],
                )?;
                let reflection = if k.is_multiple_of(2) {
                    Some(reflection_holds_with(n, a_n)?)
                } else {
                    None
                };
                row.evaluated += 1;
                if !halving {
                    row.flag(k, n, Property::HalvingIdentity);
                }
                if reflection == Some(false) {
                    row.flag(k, n, Property::Reflection);
                }
                row.records.push(IdentityRecord {
                    k,
                    n,
                    halving,
                    reflection,
                });
            }
        }
        if n >= hi {
            break;
        }
        run.advance()?;
    }
    Ok(row)
}

fn run_rows<R, F>(workers: usize, k_range: (u32, u32), row: F) -> Result<Vec<Row<R>>>
where
    R: Send,
    F: Fn(u32) -> Result<Row<R>> + Sync,
{
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(workers)
        .build()
        .map_err(|e| Error::Pool(e.to_string()))?;
    pool.install(|| (k_range.0..=k_range.1).into_par_iter().map(&row).collect())
}

fn merge<R>(rows: Vec<Row<R>>) -> (Vec<R>, Vec<Violation>, u64, u64) {
    let mut records = Vec::new();
    let mut violations = Vec::new();
    let (mut evaluated, mut skipped) = (0, 0);
    for row in rows {
        records.extend(row.records);
        violations.extend(row.violations);
        evaluated += row.evaluated;
        skipped += row.skipped;
    }
    (records, violations, evaluated, skipped)
}

/// Evaluates every cell of `k_range × n_range` (both inclusive) for `kind`.
///
/// Fails without a partial report if the ranges violate the kind's
/// hypotheses or any cell fails to evaluate.
pub fn run_scan(
    kind: ScanKind,
    k_range: (u32, u32),
    n_range: (u64, u64),
    workers: usize,
) -> Result<ScanReport> {
    validate(kind, k_range, n_range, workers)?;
    let started = Instant::now();

    macro_rules! collect {
        ($variant:ident, $row:expr) => {{
            let (records, violations, evaluated, skipped) = merge(run_rows(workers, k_range, $row)?);
            (Records::$variant(records), violations, evaluated, skipped)
        }};
    }

    let (records, violations, cells_evaluated, cells_skipped) = match kind {
        ScanKind::Theorem => collect!(Theorem, |k| theorem_row(k, n_range)),
        ScanKind::Lemma1 => {
            let limit = u32::try_from(n_range.1).unwrap_or(u32::MAX).min(1 << 26);
            let sieve = PrimeSieve::new(limit);
            collect!(Lemma1, |k| power_sum_residue_row(k, n_range, &sieve))
        }
        ScanKind::Lemma2 => collect!(Lemma2, |k| alternating_residue_row(k, n_range)),
        ScanKind::Kellner => collect!(Kellner, |k| kellner_scan_row(k, n_range)),
        ScanKind::Identities => collect!(Identities, |k| identity_row(k, n_range)),
    };

    Ok(ScanReport {
        k_range,
        n_range,
        records,
        violations,
        cells_evaluated,
        cells_skipped,
        elapsed_seconds: started.elapsed().as_secs_f64(),
        worker_count: workers,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_ranges_outside_hypotheses() {
        assert!(run_scan(ScanKind::Lemma1, (1, 5), (1, 5), 1).is_err());
        assert!(run_scan(ScanKind::Lemma2, (2, 5), (1, 5), 1).is_err());
        assert!(run_scan(ScanKind::Theorem, (1, 5), (1, 5), 1).is_err());
        assert!(run_scan(ScanKind::Kellner, (1, 5), (2, 5), 1).is_err());
        assert!(run_scan(ScanKind::Identities, (1, 5), (3, 5), 1).is_err());
        assert!(run_scan(ScanKind::Theorem, (3, 2), (2, 5), 1).is_err());
        assert!(run_scan(ScanKind::Theorem, (1, 2), (2, 5), 0).is_err());
    }

    #[test]
    fn single_cell_alternating_residue_scan() {
        let report = run_scan(ScanKind::Lemma2, (2, 2), (2, 2), 1).unwrap();
        let Records::Lemma2(records) = &report.records else {
            panic!("wrong kind");
        };
        assert_eq!(records.len(), 1);
        assert_eq!(records[0].verdict, CongruenceVerdict::new(1, 0, 0));
        assert!(report.passed());
    }

    #[test]
    fn rows_match_single_cell_operations() {
        let report = run_scan(ScanKind::Theorem, (1, 6), (2, 30), 3).unwrap();
        let Records::Theorem(records) = &report.records else {
            panic!("wrong kind");
        };
        for r in records {
            assert_eq!(r, &crate::classification::classify::<BigInt>(r.k, r.n).unwrap());
        }

        let report = run_scan(ScanKind::Lemma1, (2, 6), (1, 40), 2).unwrap();
        let Records::Lemma1(records) = &report.records else {
            panic!("wrong kind");
        };
        for r in records {
            assert_eq!(r.verdict, crate::congruence::check_power_sum_residue(r.k, r.n).unwrap());
        }
    }

    #[test]
    fn identities_skip_even_n() {
        let report = run_scan(ScanKind::Identities, (2, 3), (3, 10), 2).unwrap();
        assert_eq!(report.cells_evaluated, 2 * 4);
        assert_eq!(report.cells_skipped, 2 * 4);
        let Records::Identities(records) = &report.records else {
            panic!("wrong kind");
        };
        assert!(records.iter().all(|r| r.n % 2 == 1 && r.halving));
        assert!(records.iter().filter(|r| r.k == 3).all(|r| r.reflection.is_none()));
        assert!(records.iter().filter(|r| r.k == 2).all(|r| r.reflection == Some(true)));
    }

    #[test]
    fn workers_env_override() {
        // only checks the parse path; the variable is not set in tests
        assert!(default_workers() >= 1);
        assert_eq!("kellner".parse::<ScanKind>().unwrap(), ScanKind::Kellner);
        assert!("bogus".parse::<ScanKind>().is_err());
    }
}
