//! Grid scans over `(k, n)` and their reports.
//!
//! A scan evaluates every cell of an inclusive rectangle exactly once. Rows
//! (one exponent each) are independent and run on a fixed-size worker pool;
//! each row keeps its own running sums, and rows are merged in `k` order, so
//! the report does not depend on the worker count.

mod report;
mod scan;

pub use report::{emit_report, parse_json, to_csv_string, to_json_string, Destination, Format};
pub use scan::{
    default_workers, run_scan, CongruenceRecord, IdentityRecord, Property, Records, ScanKind,
    ScanReport, Violation, WORKERS_ENV,
};
