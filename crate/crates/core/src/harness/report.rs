use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};
use serde_json::Value;

use super::scan::{CongruenceRecord, IdentityRecord, Records, ScanKind, ScanReport, Violation};
use crate::classification::{ClassificationRecord, Condition, KellnerHit};
use crate::congruence::CongruenceVerdict;
use crate::fraction::ReducedFraction;
use crate::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Json,
    Csv,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Destination {
    Stdout,
    File(PathBuf),
}

impl Destination {
    fn describe(&self) -> PathBuf {
        match self {
            Destination::Stdout => PathBuf::from("<stdout>"),
            Destination::File(p) => p.clone(),
        }
    }
}

/// On-disk JSON layout. Field order here is the byte order of the output.
#[derive(Serialize, Deserialize)]
struct ReportDoc {
    scan_kind: ScanKind,
    k_range: (u32, u32),
    n_range: (u64, u64),
    records: Vec<Value>,
    violations: Vec<Violation>,
    cells_evaluated: u64,
    cells_skipped: u64,
    elapsed_seconds: f64,
    worker_count: usize,
}

/// Big values travel as decimal strings.
#[derive(Serialize, Deserialize)]
struct TheoremRow {
    k: u32,
    n: u64,
    predicted: bool,
    actual: bool,
    condition: Condition,
    ratio_num: String,
    ratio_den: String,
    cofactor: Option<String>,
}

#[derive(Serialize, Deserialize)]
struct CongruenceRow {
    k: u32,
    n: u64,
    #[serde(flatten)]
    verdict: CongruenceVerdict,
}

fn parse_big(s: &str) -> Result<BigInt> {
    s.parse()
        .map_err(|_| Error::Report(format!("not a decimal integer: {s:?}")))
}

fn theorem_row(r: &ClassificationRecord<BigInt>) -> TheoremRow {
    TheoremRow {
        k: r.k,
        n: r.n,
        predicted: r.predicted_integer,
        actual: r.actual_integer,
        condition: r.condition,
        ratio_num: r.ratio.numer().to_string(),
        ratio_den: r.ratio.denom().to_string(),
        cofactor: r.cofactor.as_ref().map(ToString::to_string),
    }
}

impl TheoremRow {
    fn into_record(self) -> Result<ClassificationRecord<BigInt>> {
        let numer = parse_big(&self.ratio_num)?;
        let denom = parse_big(&self.ratio_den)?;
        let ratio = ReducedFraction::new(numer.clone(), denom.clone())?;
        if ratio.numer() != &numer || ratio.denom() != &denom {
            return Err(Error::Report(format!(
                "ratio {numer}/{denom} at k={} n={} is not reduced",
                self.k, self.n
            )));
        }
        Ok(ClassificationRecord {
            k: self.k,
            n: self.n,
            predicted_integer: self.predicted,
            condition: self.condition,
            actual_integer: self.actual,
            ratio,
            cofactor: self.cofactor.as_deref().map(parse_big).transpose()?,
        })
    }
}

fn to_values<T: Serialize>(rows: impl Iterator<Item = T>) -> Result<Vec<Value>> {
    rows.map(|r| serde_json::to_value(r).map_err(Error::from))
        .collect()
}

fn from_values<T: for<'de> Deserialize<'de>>(values: Vec<Value>) -> Result<Vec<T>> {
    values
        .into_iter()
        .map(|v| serde_json::from_value(v).map_err(Error::from))
        .collect()
}

fn record_values(records: &Records) -> Result<Vec<Value>> {
    match records {
        Records::Theorem(r) => to_values(r.iter().map(theorem_row)),
        Records::Lemma1(r) | Records::Lemma2(r) => to_values(r.iter().map(|c| CongruenceRow {
            k: c.k,
            n: c.n,
            verdict: c.verdict,
        })),
        Records::Kellner(r) => to_values(r.iter().map(|h| (h.k, h.n, h.value.to_string()))),
        Records::Identities(r) => to_values(r.iter()),
    }
}

fn records_from_values(kind: ScanKind, values: Vec<Value>) -> Result<Records> {
    let congruences = |values| -> Result<Vec<CongruenceRecord>> {
        Ok(from_values::<CongruenceRow>(values)?
            .into_iter()
            .map(|c| CongruenceRecord {
                k: c.k,
                n: c.n,
                verdict: c.verdict,
            })
            .collect())
    };
    Ok(match kind {
        ScanKind::Theorem => Records::Theorem(
            from_values::<TheoremRow>(values)?
                .into_iter()
                .map(TheoremRow::into_record)
                .collect::<Result<_>>()?,
        ),
        ScanKind::Lemma1 => Records::Lemma1(congruences(values)?),
        ScanKind::Lemma2 => Records::Lemma2(congruences(values)?),
        ScanKind::Kellner => Records::Kellner(
            from_values::<(u32, u64, String)>(values)?
                .into_iter()
                .map(|(k, n, v)| Ok(KellnerHit { k, n, value: parse_big(&v)? }))
                .collect::<Result<_>>()?,
        ),
        ScanKind::Identities => Records::Identities(from_values::<IdentityRecord>(values)?),
    })
}

fn round_millis(seconds: f64) -> f64 {
    (seconds * 1000.0).round() / 1000.0
}

/// The report as one compact JSON object followed by a newline.
pub fn to_json_string(report: &ScanReport) -> Result<String> {
    let doc = ReportDoc {
        scan_kind: report.kind(),
        k_range: report.k_range,
        n_range: report.n_range,
        records: record_values(&report.records)?,
        violations: report.violations.clone(),
        cells_evaluated: report.cells_evaluated,
        cells_skipped: report.cells_skipped,
        elapsed_seconds: round_millis(report.elapsed_seconds),
        worker_count: report.worker_count,
    };
    let mut out = serde_json::to_string(&doc)?;
    out.push('\n');
    Ok(out)
}

/// Reads a report written by [`to_json_string`].
pub fn parse_json(text: &str) -> Result<ScanReport> {
    let doc: ReportDoc = serde_json::from_str(text)?;
    Ok(ScanReport {
        k_range: doc.k_range,
        n_range: doc.n_range,
        records: records_from_values(doc.scan_kind, doc.records)?,
        violations: doc.violations,
        cells_evaluated: doc.cells_evaluated,
        cells_skipped: doc.cells_skipped,
        elapsed_seconds: doc.elapsed_seconds,
        worker_count: doc.worker_count,
    })
}

fn csv_header(kind: ScanKind) -> &'static [&'static str] {
    match kind {
        ScanKind::Theorem => &["k", "n", "predicted", "actual", "condition", "ratio_num", "ratio_den"],
        ScanKind::Lemma1 | ScanKind::Lemma2 => &["k", "n", "modulus", "lhs", "rhs", "holds"],
        ScanKind::Kellner => &["k", "n", "ratio"],
        ScanKind::Identities => &["k", "n", "halving", "reflection"],
    }
}

fn write_csv<W: Write>(report: &ScanReport, out: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(csv_header(report.kind()))?;
    match &report.records {
        Records::Theorem(r) => {
            for x in r {
                w.write_record([
                    x.k.to_string(),
                    x.n.to_string(),
                    x.predicted_integer.to_string(),
                    x.actual_integer.to_string(),
                    x.condition.to_string(),
                    x.ratio.numer().to_string(),
                    x.ratio.denom().to_string(),
                ])?;
            }
        }
        Records::Lemma1(r) | Records::Lemma2(r) => {
            for x in r {
                let v = x.verdict;
                w.write_record([
                    x.k.to_string(),
                    x.n.to_string(),
                    v.modulus.to_string(),
                    v.lhs_residue.to_string(),
                    v.rhs_residue.to_string(),
                    v.holds.to_string(),
                ])?;
            }
        }
        Records::Kellner(r) => {
            for x in r {
                w.write_record([x.k.to_string(), x.n.to_string(), x.value.to_string()])?;
            }
        }
        Records::Identities(r) => {
            for x in r {
                w.write_record([
                    x.k.to_string(),
                    x.n.to_string(),
                    x.halving.to_string(),
                    x.reflection.map(|b| b.to_string()).unwrap_or_default(),
                ])?;
            }
        }
    }
    w.flush().map_err(|e| Error::Csv(e.into()))?;
    Ok(())
}

/// One CSV row per record under a header line; timing is not included.
pub fn to_csv_string(report: &ScanReport) -> Result<String> {
    let mut buf = Vec::new();
    write_csv(report, &mut buf)?;
    String::from_utf8(buf).map_err(|e| Error::Report(e.to_string()))
}

pub fn emit_report(report: &ScanReport, format: Format, destination: &Destination) -> Result<()> {
    let io_err = |source: io::Error| Error::Io {
        path: destination.describe(),
        source,
    };
    let mut sink: Box<dyn Write> = match destination {
        Destination::Stdout => Box::new(io::stdout().lock()),
        Destination::File(path) => Box::new(BufWriter::new(File::create(path).map_err(io_err)?)),
    };
    let body = match format {
        Format::Json => to_json_string(report)?,
        Format::Csv => to_csv_string(report)?,
    };
    sink.write_all(body.as_bytes()).map_err(io_err)?;
    sink.flush().map_err(io_err)
}
