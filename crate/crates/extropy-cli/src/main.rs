//! Command-line surface for the weighted cumulative past extropy library:
//! analytic and numeric measure evaluation, estimation from sample files,
//! critical-value table generation, the uniformity test, power studies,
//! and the library's invariant suite.

use std::env;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use extropy::{
    closed_form_measure, critical_values, limit_threads, numeric_measure, parse_table_csv, power,
    power_csv_row, run_all_checks, table_csv_row, uniformity_test, BoundedDistribution,
    CriticalValues, Error, MeasureKind, QuadratureConfig, Result, Sample, TestConfig,
    POWER_CSV_HEADER, TABLE_CSV_HEADER,
};

#[derive(Parser)]
#[command(
    name = "extropy",
    version,
    about = "Weighted cumulative past extropy: measures, estimation, and a uniformity test"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Method {
    /// Exact closed form; fails for pairs without one.
    Closed,
    /// Adaptive quadrature.
    Quadrature,
    /// Both routes plus their absolute discrepancy.
    Both,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate a measure of a catalog distribution.
    Measure {
        /// Distribution, e.g. uniform:0,1 | powerlaw:2 | beta:1.5,1.5
        #[arg(long)]
        dist: String,
        /// Measure kind: extropy | crj | cpj | wcrj | wcpj | order-max | phi-p
        #[arg(long)]
        kind: String,
        /// Weight order for wcpj, order-max, and phi-p.
        #[arg(long, default_value_t = 1)]
        m: u32,
        /// Sample size for order-max.
        #[arg(long)]
        n: Option<u32>,
        /// Cutoff in (0,1) for phi-p.
        #[arg(long)]
        p: Option<f64>,
        #[arg(long, value_enum, default_value_t = Method::Quadrature)]
        method: Method,
    },
    /// Estimate the weighted measure from a sample file.
    MeasureSample {
        /// File with one observation per line; a single leading '#' header
        /// line is allowed.
        #[arg(long)]
        input: PathBuf,
        #[arg(long, default_value_t = 1)]
        m: u32,
    },
    /// Generate critical-value table rows under the uniform null.
    CriticalValues {
        /// Sample sizes, comma separated.
        #[arg(long, value_delimiter = ',', required = true)]
        n: Vec<usize>,
        #[arg(long, default_value_t = 1)]
        m: u32,
        #[arg(long, default_value_t = 0.05)]
        alpha: f64,
        #[arg(long, default_value_t = 100_000)]
        reps: usize,
        #[arg(long, default_value_t = 42)]
        seed: u64,
        /// Write the CSV here instead of stdout.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Test a sample file for uniformity on [0, 1].
    TestUniformity {
        #[arg(long)]
        input: PathBuf,
        #[arg(long, default_value_t = 1)]
        m: u32,
        #[arg(long, default_value_t = 0.05)]
        alpha: f64,
        /// Replications used when generating critical values on the fly.
        #[arg(long, default_value_t = 100_000)]
        reps: usize,
        #[arg(long, default_value_t = 42)]
        seed: u64,
        /// Reuse a previously generated critical-value table.
        #[arg(long)]
        table: Option<PathBuf>,
    },
    /// Estimate the test's power against a bounded alternative.
    Power {
        /// Alternative distribution with support inside [0, 1].
        #[arg(long)]
        alt: String,
        /// Sample sizes, comma separated.
        #[arg(long, value_delimiter = ',', required = true)]
        n: Vec<usize>,
        #[arg(long, default_value_t = 1)]
        m: u32,
        #[arg(long, default_value_t = 0.05)]
        alpha: f64,
        #[arg(long, default_value_t = 100_000)]
        reps: usize,
        #[arg(long, default_value_t = 42)]
        seed: u64,
        /// Write the CSV here instead of stdout.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run the library's invariant suite and report each check.
    VerifyProperties,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Err(e) = configure_threads() {
        eprintln!("error: {e}");
        return ExitCode::from(e.exit_code() as u8);
    }
    match run(cli.command) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}

fn configure_threads() -> Result<()> {
    match env::var("EXTROPY_THREADS") {
        Ok(raw) => {
            let threads: usize = raw.trim().parse().map_err(|_| {
                Error::Parse(format!(
                    "EXTROPY_THREADS must be a positive integer, got '{raw}'"
                ))
            })?;
            limit_threads(threads);
            Ok(())
        }
        Err(_) => Ok(()),
    }
}

fn run(command: Command) -> Result<ExitCode> {
    match command {
        Command::Measure {
            dist,
            kind,
            m,
            n,
            p,
            method,
        } => {
            let dist = BoundedDistribution::parse(&dist)?;
            let kind = measure_kind(&kind, m, n, p)?;
            let quad = QuadratureConfig::default();
            match method {
                Method::Closed => println!("{}", closed_form_measure(dist, kind)?),
                Method::Quadrature => println!("{}", numeric_measure(dist, kind, &quad)?),
                Method::Both => {
                    let closed = closed_form_measure(dist, kind)?;
                    let numeric = numeric_measure(dist, kind, &quad)?;
                    println!("closed: {closed}");
                    println!("quadrature: {numeric}");
                    println!("discrepancy: {:e}", (closed - numeric).abs());
                }
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::MeasureSample { input, m } => {
            let sample = Sample::from_path(&input)?;
            println!("{}", extropy::empirical_wcpj(&sample, m));
            Ok(ExitCode::SUCCESS)
        }
        Command::CriticalValues {
            n,
            m,
            alpha,
            reps,
            seed,
            out,
        } => {
            let mut csv = String::from(TABLE_CSV_HEADER);
            csv.push('\n');
            for size in n {
                let cfg = TestConfig {
                    n: size,
                    m,
                    alpha,
                    reps,
                    master_seed: seed,
                };
                let cv = critical_values(&cfg)?;
                csv.push_str(&table_csv_row(&cv));
                csv.push('\n');
            }
            emit(out.as_deref(), &csv)?;
            Ok(ExitCode::SUCCESS)
        }
        Command::TestUniformity {
            input,
            m,
            alpha,
            reps,
            seed,
            table,
        } => {
            let sample = Sample::from_path(&input)?;
            let (cv, table_source) = match table {
                Some(path) => {
                    let text = fs::read_to_string(&path)?;
                    let row = select_table_row(&parse_table_csv(&text)?, sample.n(), m, alpha)?;
                    (row, path.display().to_string())
                }
                None => {
                    let cfg = TestConfig {
                        n: sample.n(),
                        m,
                        alpha,
                        reps,
                        master_seed: seed,
                    };
                    (critical_values(&cfg)?, "generated".to_string())
                }
            };
            let decision = uniformity_test(&sample, &cv);
            let report = serde_json::json!({
                "schema_version": 1,
                "n": sample.n(),
                "m": cv.config.m,
                "alpha": cv.config.alpha,
                "statistic": decision.statistic,
                "g1": cv.g1,
                "g2": cv.g2,
                "reject": decision.reject,
                "support_violation": decision.support_violation,
                "n_mismatch": decision.n_mismatch,
                "table_source": table_source,
            });
            println!(
                "{}",
                serde_json::to_string_pretty(&report).expect("report serializes")
            );
            Ok(ExitCode::SUCCESS)
        }
        Command::Power {
            alt,
            n,
            m,
            alpha,
            reps,
            seed,
            out,
        } => {
            let alt = BoundedDistribution::parse(&alt)?;
            let mut csv = String::from(POWER_CSV_HEADER);
            csv.push('\n');
            for size in n {
                let cfg = TestConfig {
                    n: size,
                    m,
                    alpha,
                    reps,
                    master_seed: seed,
                };
                let cv = critical_values(&cfg)?;
                let estimate = power(alt, &cfg, &cv)?;
                csv.push_str(&power_csv_row(alt, &cfg, estimate));
                csv.push('\n');
            }
            emit(out.as_deref(), &csv)?;
            Ok(ExitCode::SUCCESS)
        }
        Command::VerifyProperties => {
            let outcomes = run_all_checks();
            let mut first_failure = None;
            for outcome in &outcomes {
                let status = if outcome.passed { "PASS" } else { "FAIL" };
                println!("{status} {} ({})", outcome.name, outcome.detail);
                if !outcome.passed && first_failure.is_none() {
                    first_failure = Some(outcome.name);
                }
            }
            match first_failure {
                Some(name) => {
                    eprintln!("first failing invariant: {name}");
                    Ok(ExitCode::FAILURE)
                }
                None => {
                    println!("all {} checks passed", outcomes.len());
                    Ok(ExitCode::SUCCESS)
                }
            }
        }
    }
}

fn measure_kind(kind: &str, m: u32, n: Option<u32>, p: Option<f64>) -> Result<MeasureKind> {
    match kind {
        "extropy" => Ok(MeasureKind::Extropy),
        "crj" => Ok(MeasureKind::Crj),
        "cpj" => Ok(MeasureKind::Cpj),
        "wcrj" => Ok(MeasureKind::Wcrj),
        "wcpj" => Ok(MeasureKind::Wcpj { m }),
        "order-max" => {
            let n = n.ok_or_else(|| Error::Parse("order-max needs --n".into()))?;
            Ok(MeasureKind::OrderMaxWcpj { n, m })
        }
        "phi-p" => {
            let p = p.ok_or_else(|| Error::Parse("phi-p needs --p".into()))?;
            Ok(MeasureKind::PhiP { p, m })
        }
        other => Err(Error::Parse(format!(
            "unknown measure kind '{other}'; expected extropy, crj, cpj, wcrj, wcpj, order-max, or phi-p"
        ))),
    }
}

/// Pick the table row for (m, alpha), preferring an exact sample-size match
/// and falling back to the closest size; the decision then carries an
/// explicit size-mismatch flag.
fn select_table_row(
    rows: &[CriticalValues],
    n: usize,
    m: u32,
    alpha: f64,
) -> Result<CriticalValues> {
    rows.iter()
        .filter(|row| row.config.m == m && (row.config.alpha - alpha).abs() < 1e-12)
        .min_by_key(|row| row.config.n.abs_diff(n))
        .copied()
        .ok_or_else(|| Error::Unsupported(format!("table has no row for m={m}, alpha={alpha}")))
}

fn emit(out: Option<&Path>, content: &str) -> Result<()> {
    match out {
        Some(path) => fs::write(path, content).map_err(Error::from),
        None => {
            print!("{content}");
            Ok(())
        }
    }
}
