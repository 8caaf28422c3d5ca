use std::path::PathBuf;
use std::process::ExitCode;

use altsum::classification::predict_integer_ratio;
use altsum::exact_sums::{alternating_ratio, alternating_sum, classical_ratio, power_sum, PowerSumQuery};
use altsum::harness::{default_workers, emit_report, run_scan, Destination, Format, ScanKind};
use altsum::modular::{alternating_sum_mod, power_sum_mod};
use altsum::{Error, ExactInteger};
use clap::{Args, Parser, Subcommand, ValueEnum};

/// Exact power sums and exhaustive checks of integer ratios of consecutive
/// alternating power sums.
///
/// Exit status: 0 when every checked property held, 1 when a violation or
/// counterexample was found, 2 on usage or I/O errors.
#[derive(Parser)]
#[command(name = "altsum", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print A_k(n) (or S_k(n) with --classic), optionally reduced mod M.
    Compute {
        #[arg(long)]
        k: u32,
        #[arg(long)]
        n: u64,
        /// Classical sum S_k(n) instead of the alternating sum.
        #[arg(long)]
        classic: bool,
        /// Print the residue modulo this value instead of the exact sum.
        #[arg(long = "mod", value_name = "M")]
        modulus: Option<u64>,
    },
    /// Print A_k(n+1)/A_k(n) (or S_k(n+1)/S_k(n) with --classic) in lowest terms.
    Ratio {
        #[arg(long)]
        k: u32,
        #[arg(long)]
        n: u64,
        #[arg(long)]
        classic: bool,
    },
    /// Check the residue class of 2 S_k(n) on a grid.
    CheckLemma1(#[command(flatten)] ScanArgs),
    /// Check the residue class of A_k(n) on a grid.
    CheckLemma2(#[command(flatten)] ScanArgs),
    /// Compare predicted and exact integrality of A_k(n+1)/A_k(n) on a grid.
    VerifyTheorem(#[command(flatten)] ScanArgs),
    /// List integer classical ratios S_k(n+1)/S_k(n) on a grid.
    ScanKellner(#[command(flatten)] ScanArgs),
    /// Check the halving identity and reflection congruence on a grid.
    CheckIdentities(#[command(flatten)] ScanArgs),
}

#[derive(Args)]
struct ScanArgs {
    #[arg(long)]
    k_min: Option<u32>,
    #[arg(long)]
    k_max: Option<u32>,
    #[arg(long)]
    n_min: Option<u64>,
    #[arg(long)]
    n_max: Option<u64>,
    /// Worker threads [default: $ALTSUM_JOBS or available parallelism]
    #[arg(long)]
    jobs: Option<usize>,
    #[arg(long, value_enum, default_value_t = OutputFormat::Json)]
    format: OutputFormat,
    /// Write the report here instead of standard output.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
enum OutputFormat {
    Json,
    Csv,
}

/// Default grid for each scan: (k_min, k_max, n_min, n_max).
fn default_grid(kind: ScanKind) -> (u32, u32, u64, u64) {
    match kind {
        ScanKind::Theorem => (1, 200, 2, 2000),
        ScanKind::Lemma1 => (2, 100, 1, 1000),
        ScanKind::Lemma2 => (2, 100, 2, 1000),
        ScanKind::Kellner => (1, 100, 3, 500),
        ScanKind::Identities => (2, 100, 3, 1001),
    }
}

fn scan(kind: ScanKind, args: ScanArgs) -> Result<ExitCode, Error> {
    let (k_lo, k_hi, n_lo, n_hi) = default_grid(kind);
    let k_range = (args.k_min.unwrap_or(k_lo), args.k_max.unwrap_or(k_hi));
    let n_range = (args.n_min.unwrap_or(n_lo), args.n_max.unwrap_or(n_hi));
    let workers = args.jobs.unwrap_or_else(default_workers);
    eprintln!(
        "{kind}: k in [{}, {}], n in [{}, {}], {workers} workers",
        k_range.0, k_range.1, n_range.0, n_range.1
    );
    let report = run_scan(kind, k_range, n_range, workers)?;
    let format = match args.format {
        OutputFormat::Json => Format::Json,
        OutputFormat::Csv => Format::Csv,
    };
    let destination = args.out.map_or(Destination::Stdout, Destination::File);
    emit_report(&report, format, &destination)?;
    eprintln!(
        "{kind}: {} cells evaluated, {} skipped, {} records, {} violations, {:.3}s",
        report.cells_evaluated,
        report.cells_skipped,
        report.records.len(),
        report.violations.len(),
        report.elapsed_seconds
    );
    for v in report.violations.iter().take(10) {
        eprintln!("  violation: k={} n={} {:?}", v.k, v.n, v.property);
    }
    Ok(if report.passed() {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    })
}

fn run(cli: Cli) -> Result<ExitCode, Error> {
    match cli.command {
        Command::Compute {
            k,
            n,
            classic,
            modulus,
        } => {
            let q = PowerSumQuery::new(k, n)?;
            let value = match (modulus, classic) {
                (Some(m), true) => power_sum_mod(q, m)?.to_string(),
                (Some(m), false) => alternating_sum_mod(q, m)?.to_string(),
                (None, true) => power_sum::<ExactInteger>(q)?.to_string(),
                (None, false) => alternating_sum::<ExactInteger>(q)?.to_string(),
            };
            println!("{value}");
        }
        Command::Ratio { k, n, classic } => {
            if classic {
                println!("{}", classical_ratio::<ExactInteger>(k, n)?);
            } else {
                let ratio = alternating_ratio::<ExactInteger>(k, n)?;
                let (_, condition) = predict_integer_ratio(k, n)?;
                println!("{ratio}");
                eprintln!("integer: {}, condition: {condition}", ratio.is_integer());
            }
        }
        Command::CheckLemma1(args) => return scan(ScanKind::Lemma1, args),
        Command::CheckLemma2(args) => return scan(ScanKind::Lemma2, args),
        Command::VerifyTheorem(args) => return scan(ScanKind::Theorem, args),
        Command::ScanKellner(args) => return scan(ScanKind::Kellner, args),
        Command::CheckIdentities(args) => return scan(ScanKind::Identities, args),
    }
    Ok(ExitCode::SUCCESS)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
