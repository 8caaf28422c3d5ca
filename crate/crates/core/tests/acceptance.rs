//! End-to-end acceptance checks. Runs every criterion, prints one PASS/FAIL
//! line each, and exits non-zero if any failed.

use std::process::ExitCode;
use std::time::Instant;

use altsum::classification::{
    power_of_three_obstruction, power_of_three_obstruction_exact, strict_inequality_holds,
};
use altsum::congruence::{check_alternating_residue, check_power_sum_residue, ParityCase};
use altsum::congruence::predict_alternating_residue;
use altsum::exact_sums::{
    alternating_ratio, alternating_sum, classical_ratio, power_sum, PowerSumQuery, RunningSums,
};
use altsum::harness::{run_scan, to_json_string, Property, Records, ScanKind, ScanReport};
use altsum::modular::{alternating_sum_mod, power_sum_mod};
use altsum::ExactInteger;
use num_bigint::BigInt;
use num_traits::{One, ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Outcome = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn scan(kind: ScanKind, k: (u32, u32), n: (u64, u64), workers: usize) -> Result<ScanReport, String> {
    run_scan(kind, k, n, workers).map_err(|e| e.to_string())
}

fn violations_of(report: &ScanReport, props: &[Property]) -> usize {
    report
        .violations
        .iter()
        .filter(|v| props.contains(&v.property))
        .count()
}

fn first_violations(report: &ScanReport) -> String {
    format!("{:?}", report.violations.iter().take(5).collect::<Vec<_>>())
}

// 1. predicted integrality equals exact integrality on k in [1,200], n in [2,2000]
fn theorem_grid(report: &ScanReport) -> Outcome {
    let grid = 200 * 1999;
    ensure(report.cells_evaluated == grid && report.records.len() as u64 == grid, || {
        format!("evaluated {} of {grid} cells", report.cells_evaluated)
    })?;
    let Records::Theorem(records) = &report.records else {
        return Err("wrong record kind".into());
    };
    let disagreements = records.iter().filter(|r| !r.agrees()).count();
    let bad = violations_of(report, &[Property::Classification, Property::Cofactor]);
    ensure(disagreements == 0 && bad == 0, || {
        format!("{disagreements} disagreements, {bad} violations: {}", first_violations(report))
    })?;
    let integers = records.iter().filter(|r| r.actual_integer).count();
    ensure(report.elapsed_seconds < 600.0, || {
        format!("took {:.1}s, limit 600s", report.elapsed_seconds)
    })?;
    Ok(format!(
        "{grid} cells, {integers} integer ratios, 0 violations, {:.1}s with {} workers",
        report.elapsed_seconds, report.worker_count
    ))
}

// 2. 2 S_k(n) residue class on k in [2,100], n in [1,1000]
fn power_sum_congruence() -> Outcome {
    let report = scan(ScanKind::Lemma1, (2, 100), (1, 1000), 8)?;
    ensure(report.cells_evaluated == 99 * 1000, || "grid not covered".into())?;
    ensure(report.passed(), || first_violations(&report))?;
    let Records::Lemma1(records) = &report.records else {
        return Err("wrong record kind".into());
    };
    let even = records.iter().filter(|r| r.k % 2 == 0).count();
    let odd = records.len() - even;
    ensure(even > 0 && odd > 0, || "a parity branch was not exercised".into())?;
    // standalone checks, summing from scratch, on a stride of the grid
    let mut sampled = 0;
    for r in records.iter().step_by(41) {
        let direct = check_power_sum_residue(r.k, r.n).map_err(|e| e.to_string())?;
        ensure(direct == r.verdict && direct.holds, || {
            format!("k={} n={}: scan {:?} vs direct {:?}", r.k, r.n, r.verdict, direct)
        })?;
        sampled += 1;
    }
    Ok(format!(
        "{} cells ({even} even-k, {odd} odd-k), 0 violations, {sampled} cross-checked",
        records.len()
    ))
}

// 3. A_k(n) residue class on k in [2,100], n in [2,1000], all three cases
fn alternating_congruence() -> Outcome {
    let report = scan(ScanKind::Lemma2, (2, 100), (2, 1000), 8)?;
    ensure(report.cells_evaluated == 99 * 999, || "grid not covered".into())?;
    ensure(report.passed(), || first_violations(&report))?;
    let Records::Lemma2(records) = &report.records else {
        return Err("wrong record kind".into());
    };
    let mut cases = [0usize; 3];
    for r in records {
        let case = predict_alternating_residue(r.k, r.n).map_err(|e| e.to_string())?.case;
        cases[match case {
            ParityCase::EvenExponentOddIndex => 0,
            ParityCase::EvenExponentEvenIndex => 1,
            ParityCase::OddExponent => 2,
        }] += 1;
    }
    ensure(cases.iter().all(|&c| c > 0), || format!("case counts {cases:?}"))?;
    for r in records.iter().step_by(37) {
        let direct = check_alternating_residue(r.k, r.n).map_err(|e| e.to_string())?;
        ensure(direct == r.verdict, || format!("k={} n={}: scan/direct mismatch", r.k, r.n))?;
    }
    Ok(format!(
        "{} cells, cases (even k odd n, even k even n, odd k) = {cases:?}, 0 violations",
        records.len()
    ))
}

// 4. halving identity on k in [2,50], odd n in [3,501]; reflection on even k in [2,100], odd n in [3,1001]
fn identities() -> Outcome {
    let report = scan(ScanKind::Identities, (2, 100), (3, 1001), 8)?;
    let Records::Identities(records) = &report.records else {
        return Err("wrong record kind".into());
    };
    let halving = records
        .iter()
        .filter(|r| r.k <= 50 && r.n <= 501)
        .map(|r| r.halving)
        .collect::<Vec<_>>();
    ensure(halving.len() == 49 * 250 && halving.iter().all(|&h| h), || {
        format!("halving cells {} (expected {}), all hold: {}", halving.len(), 49 * 250, halving.iter().all(|&h| h))
    })?;
    let reflection = records
        .iter()
        .filter(|r| r.k % 2 == 0)
        .map(|r| r.reflection)
        .collect::<Vec<_>>();
    ensure(reflection.len() == 50 * 500 && reflection.iter().all(|&r| r == Some(true)), || {
        format!("reflection cells {} (expected {})", reflection.len(), 50 * 500)
    })?;
    ensure(report.passed(), || first_violations(&report))?;
    Ok(format!(
        "halving {} cells, reflection {} cells, 0 violations",
        halving.len(),
        reflection.len()
    ))
}

// 5. known values
fn known_values() -> Outcome {
    let two = BigInt::from(2);
    for k in 1..=64u32 {
        let p = num_traits::pow(two.clone(), k as usize);
        let alt = alternating_ratio::<ExactInteger>(k, 2).map_err(|e| e.to_string())?;
        ensure(alt.to_integer() == Some(&(&p - 1)), || format!("A_{k}(3)/A_{k}(2) = {alt}"))?;
        let cls = classical_ratio::<ExactInteger>(k, 2).map_err(|e| e.to_string())?;
        ensure(cls.to_integer() == Some(&(&p + 1)), || format!("S_{k}(3)/S_{k}(2) = {cls}"))?;
    }
    let fourth: Vec<u32> = (1..=100)
        .filter(|&k| classical_ratio::<ExactInteger>(k, 3).unwrap().is_integer())
        .collect();
    ensure(fourth == [1, 3], || format!("S_k(4)/S_k(3) integer for k in {fourth:?}"))?;

    let mut run = RunningSums::<i64>::new(1).map_err(|e| e.to_string())?;
    for n in 1..=100_000u64 {
        run.advance_to(n).map_err(|e| e.to_string())?;
        ensure(*run.alternating_sum() == (n / 2) as i64, || format!("A_1({n}) = {}", run.alternating_sum()))?;
    }
    for n in (1..=100_000u64).step_by(997) {
        let direct: i64 = alternating_sum(PowerSumQuery::new(1, n).unwrap()).map_err(|e| e.to_string())?;
        ensure(direct == (n / 2) as i64, || format!("direct A_1({n}) = {direct}"))?;
    }
    Ok("2^k-1 and 2^k+1 for k<=64, S_k(4)/S_k(3) integer only at k in {1,3}, A_1(n)=floor(n/2) for n<=1e5".into())
}

// 6. classical ratio scan on k in [1,100], n in [3,500]
fn classical_scan() -> Outcome {
    let report = scan(ScanKind::Kellner, (1, 100), (3, 500), 4)?;
    let Records::Kellner(hits) = &report.records else {
        return Err("wrong record kind".into());
    };
    let found: Vec<(u32, u64, String)> = hits.iter().map(|h| (h.k, h.n, h.value.to_string())).collect();
    let expected = vec![(1, 3, "2".to_string()), (3, 3, "4".to_string())];
    ensure(found == expected && report.passed(), || format!("hits {found:?}"))?;
    ensure(report.cells_evaluated == 100 * 498, || "grid not covered".into())?;
    Ok(format!("{} cells, hits {found:?}", report.cells_evaluated))
}

// 7. proof-step properties
fn proof_steps(theorem: &ScanReport) -> Outcome {
    let hits: Vec<(u32, u32)> = (1..=1_000_000u32)
        .filter_map(|k| power_of_three_obstruction(k).map(|m| (k, m)))
        .collect();
    ensure(hits == [(2, 1)], || format!("obstruction hits {hits:?}"))?;
    for k in 1..=100_000u32 {
        ensure(power_of_three_obstruction_exact(k) == power_of_three_obstruction(k), || {
            format!("screened and exact obstruction differ at k={k}")
        })?;
    }
    let mut strict = 0;
    for k in (3..=51u32).step_by(2) {
        for n in (4..=200u64).step_by(2) {
            let holds = strict_inequality_holds(k, n).map_err(|e| e.to_string())?;
            ensure(holds, || format!("A_{k}({n}) <= ({n}/2)^{k}"))?;
            strict += 1;
        }
    }
    let bounds = violations_of(theorem, &[Property::Positivity, Property::LowerBound]);
    ensure(bounds == 0, || format!("{bounds} positivity/lower-bound violations"))?;
    Ok(format!(
        "obstruction only at (k,m)=(2,1) for k<=1e6 (exact division to 1e5), {strict} strict-inequality cells, bounds on {} cells",
        theorem.cells_evaluated
    ))
}

fn naive_power(j: u64, k: u32) -> BigInt {
    let mut acc = BigInt::one();
    for _ in 0..k {
        acc *= j;
    }
    acc
}

// 8. exact and modular paths against a naive summation on k in [1,30], n in [1,300]
fn oracle_equivalence() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    let mut cells = 0;
    for k in 1..=30u32 {
        for n in 1..=300u64 {
            let mut s = BigInt::zero();
            let mut signed = BigInt::zero();
            for j in 1..n {
                let t = naive_power(j, k);
                s += &t;
                if j % 2 == 1 {
                    signed += t;
                } else {
                    signed -= t;
                }
            }
            let a = if n % 2 == 0 { signed } else { -signed };

            let q = PowerSumQuery::new(k, n).unwrap();
            let exact_s: BigInt = power_sum(q).map_err(|e| e.to_string())?;
            let exact_a: BigInt = alternating_sum(q).map_err(|e| e.to_string())?;
            ensure(exact_s == s && exact_a == a, || format!("exact mismatch at k={k} n={n}"))?;

            for i in 0..20 {
                let m: u64 = if i % 2 == 0 {
                    rng.gen_range(1..=u64::MAX)
                } else {
                    rng.gen_range(1..=1000)
                };
                let bm = BigInt::from(m);
                let want_s = (&s % &bm).to_u64().unwrap();
                let want_a = (((&a % &bm) + &bm) % &bm).to_u64().unwrap();
                ensure(power_sum_mod(q, m).unwrap() == want_s, || format!("S mod {m} at k={k} n={n}"))?;
                ensure(alternating_sum_mod(q, m).unwrap() == want_a, || format!("A mod {m} at k={k} n={n}"))?;
            }
            cells += 1;
        }
    }
    Ok(format!("{cells} cells x 20 moduli agree"))
}

fn stable_json(report: &ScanReport) -> Result<String, String> {
    let text = to_json_string(report).map_err(|e| e.to_string())?;
    let mut value: serde_json::Value = serde_json::from_str(&text).map_err(|e| e.to_string())?;
    let obj = value.as_object_mut().ok_or("report is not an object")?;
    obj.remove("elapsed_seconds");
    obj.remove("worker_count");
    serde_json::to_string(&value).map_err(|e| e.to_string())
}

// 9. verify-theorem JSON identical for 1 and 8 workers on a 50x50 grid
fn determinism() -> Outcome {
    let one = stable_json(&scan(ScanKind::Theorem, (1, 50), (2, 51), 1)?)?;
    let eight = stable_json(&scan(ScanKind::Theorem, (1, 50), (2, 51), 8)?)?;
    ensure(one == eight, || "theorem reports differ between 1 and 8 workers".into())?;
    Ok(format!("{} bytes identical", one.len()))
}

fn main() -> ExitCode {
    let mut failed = 0;
    let mut report_line = |id: u32, name: &str, started: Instant, outcome: Outcome| {
        let secs = started.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("PASS criterion {id} [{name}] ({secs:.1}s): {detail}"),
            Err(detail) => {
                failed += 1;
                println!("FAIL criterion {id} [{name}] ({secs:.1}s): {detail}");
            }
        }
    };

    let t = Instant::now();
    let theorem = scan(ScanKind::Theorem, (1, 200), (2, 2000), 8);
    let outcome = theorem.as_ref().map_err(Clone::clone).and_then(theorem_grid);
    report_line(1, "integer-ratio classification", t, outcome);

    let t = Instant::now();
    report_line(2, "power-sum congruence", t, power_sum_congruence());
    let t = Instant::now();
    report_line(3, "alternating-sum congruence", t, alternating_congruence());
    let t = Instant::now();
    report_line(4, "halving identity and reflection", t, identities());
    let t = Instant::now();
    report_line(5, "known values", t, known_values());
    let t = Instant::now();
    report_line(6, "classical ratio scan", t, classical_scan());
    let t = Instant::now();
    let outcome = theorem.as_ref().map_err(Clone::clone).and_then(proof_steps);
    report_line(7, "proof-step properties", t, outcome);
    let t = Instant::now();
    report_line(8, "oracle equivalence", t, oracle_equivalence());
    let t = Instant::now();
    report_line(9, "determinism", t, determinism());

    if failed == 0 {
        println!("acceptance: all 9 criteria passed");
        ExitCode::SUCCESS
    } else {
        println!("acceptance: {failed} criteria failed");
        ExitCode::FAILURE
    }
}
