//! Seeded Monte Carlo engine for the uniformity test: null distribution of
//! the empirical statistic, critical-value tables, the accept/reject rule,
//! and power studies against bounded alternatives.
//!
//! Every replication draws from its own counter-derived stream, so output
//! is bitwise reproducible for a fixed configuration and independent of
//! how replications are scheduled across threads. Table generation uses
//! stream indices `[0, reps)` of the master seed; power studies use
//! `[reps, 2*reps)`, so the two phases never share randomness.

use rand::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;
#[cfg(feature = "parallel")]
use rayon::prelude::*;

use crate::distributions::BoundedDistribution;
use crate::empirical::{empirical_wcpj, Sample};
use crate::error::{Error, Result};

/// Minimum replication count accepted for critical-value tables.
pub const TABLE_MIN_REPS: usize = 1000;

/// One independent generator, addressed by (master seed, stream index).
/// Identical addresses reproduce identical draws bit for bit.
pub struct RandomStream {
    rng: ChaCha8Rng,
}

impl RngCore for RandomStream {
    fn next_u32(&mut self) -> u32 {
        self.rng.next_u32()
    }

    fn next_u64(&mut self) -> u64 {
        self.rng.next_u64()
    }

    fn fill_bytes(&mut self, dest: &mut [u8]) {
        self.rng.fill_bytes(dest)
    }
}

/// Derive the stream at `index` from `master_seed`. Derivation is pure:
/// any (seed, index) pair can be opened in any order, on any thread, and
/// yields the same sequence.
pub fn derive_stream(master_seed: u64, index: u64) -> RandomStream {
    let mut rng = ChaCha8Rng::seed_from_u64(master_seed);
    rng.set_stream(index);
    RandomStream { rng }
}

/// Full description of one simulation run. Two equal configurations always
/// produce bitwise-identical artifacts.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TestConfig {
    /// Sample size per replication, at least 2.
    pub n: usize,
    /// Weight order of the statistic.
    pub m: u32,
    /// Significance level, strictly inside (0, 1).
    pub alpha: f64,
    /// Number of replications.
    pub reps: usize,
    /// Seed from which all replication streams derive.
    pub master_seed: u64,
}

impl TestConfig {
    pub fn validate(&self) -> Result<()> {
        if self.n < 2 {
            return Err(Error::InvalidParameter(format!(
                "sample size must be at least 2, got {}",
                self.n
            )));
        }
        if !(self.alpha > 0.0 && self.alpha < 1.0) {
            return Err(Error::InvalidParameter(format!(
                "significance level must lie in (0, 1), got {}",
                self.alpha
            )));
        }
        if self.reps == 0 {
            return Err(Error::InvalidParameter(
                "replication count must be positive".into(),
            ));
        }
        Ok(())
    }
}

fn replicate(dist: BoundedDistribution, cfg: &TestConfig, offset: u64, index: usize) -> f64 {
    let mut stream = derive_stream(cfg.master_seed, offset + index as u64);
    let values = dist.sample(&mut stream, cfg.n);
    let sample =
        Sample::new(values).expect("draws from a bounded distribution are finite and non-negative");
    empirical_wcpj(&sample, cfg.m)
}

#[cfg(feature = "parallel")]
fn simulate_offset(dist: BoundedDistribution, cfg: &TestConfig, offset: u64) -> Vec<f64> {
    (0..cfg.reps)
        .into_par_iter()
        .map(|i| replicate(dist, cfg, offset, i))
        .collect()
}

#[cfg(not(feature = "parallel"))]
fn simulate_offset(dist: BoundedDistribution, cfg: &TestConfig, offset: u64) -> Vec<f64> {
    (0..cfg.reps)
        .map(|i| replicate(dist, cfg, offset, i))
        .collect()
}

/// Simulate the statistic under `dist`: replication `r` draws `cfg.n`
/// values from stream `r` and evaluates the empirical measure. The output
/// is ordered by replication index regardless of scheduling.
pub fn simulate_statistic(dist: BoundedDistribution, cfg: &TestConfig) -> Result<Vec<f64>> {
    cfg.validate()?;
    Ok(simulate_offset(dist, cfg, 0))
}

/// Single-threaded variant of [`simulate_statistic`] with identical output,
/// kept for benchmarking and for checking schedule independence.
pub fn simulate_statistic_sequential(
    dist: BoundedDistribution,
    cfg: &TestConfig,
) -> Result<Vec<f64>> {
    cfg.validate()?;
    Ok((0..cfg.reps).map(|i| replicate(dist, cfg, 0, i)).collect())
}

/// Order statistic at rank `ceil(q * len)`, 1-indexed, so `q = 1` returns
/// the maximum and `q = 0.025` over 100 values returns the 3rd smallest.
pub fn empirical_quantile(values: &[f64], q: f64) -> Result<f64> {
    if values.is_empty() {
        return Err(Error::InvalidSample(
            "quantile of an empty value set".into(),
        ));
    }
    if !(q > 0.0 && q <= 1.0) {
        return Err(Error::Domain(format!(
            "quantile level must lie in (0, 1], got {q}"
        )));
    }
    let mut sorted = values.to_vec();
    sorted.sort_by(f64::total_cmp);
    let rank = ((q * sorted.len() as f64).ceil() as usize).clamp(1, sorted.len());
    Ok(sorted[rank - 1])
}

/// Lower and upper critical values bracketing the central `1 - alpha` mass
/// of the null statistic distribution.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CriticalValues {
    pub g1: f64,
    pub g2: f64,
    pub config: TestConfig,
}

/// Simulate the statistic under the standard uniform null and take the
/// `alpha/2` and `1 - alpha/2` empirical quantiles. Requires at least
/// [`TABLE_MIN_REPS`] replications.
pub fn critical_values(cfg: &TestConfig) -> Result<CriticalValues> {
    cfg.validate()?;
    if cfg.reps < TABLE_MIN_REPS {
        return Err(Error::InvalidParameter(format!(
            "critical values need at least {TABLE_MIN_REPS} replications, got {}",
            cfg.reps
        )));
    }
    let null = BoundedDistribution::uniform(0.0, 1.0)?;
    let stats = simulate_statistic(null, cfg)?;
    let g1 = empirical_quantile(&stats, cfg.alpha / 2.0)?;
    let g2 = empirical_quantile(&stats, 1.0 - cfg.alpha / 2.0)?;
    Ok(CriticalValues {
        g1,
        g2,
        config: *cfg,
    })
}

/// Outcome of testing one sample against a critical-value row.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TestDecision {
    /// Empirical statistic of the sample at the row's weight order.
    pub statistic: f64,
    /// True when the sample is incompatible with the uniform null.
    pub reject: bool,
    /// True when an observation lies outside [0, 1]; such data refutes
    /// uniformity outright and forces rejection.
    pub support_violation: bool,
    /// True when the sample size differs from the row's sample size, which
    /// makes the critical values only approximate.
    pub n_mismatch: bool,
}

/// Decide uniformity: reject when the statistic falls outside `[g1, g2]`
/// or any observation escapes the null support.
pub fn uniformity_test(sample: &Sample, cv: &CriticalValues) -> TestDecision {
    let statistic = empirical_wcpj(sample, cv.config.m);
    let support_violation = sample.values().iter().any(|&v| v > 1.0);
    let n_mismatch = sample.n() != cv.config.n;
    let reject = support_violation || statistic < cv.g1 || statistic > cv.g2;
    TestDecision {
        statistic,
        reject,
        support_violation,
        n_mismatch,
    }
}

/// Estimated rejection probability under `alt`: the fraction of `cfg.reps`
/// fresh replications whose statistic falls outside `[g1, g2]`. Replication
/// streams are offset by `cfg.reps` so they never overlap the table phase.
pub fn power(alt: BoundedDistribution, cfg: &TestConfig, cv: &CriticalValues) -> Result<f64> {
    cfg.validate()?;
    let (lo, hi) = alt.support();
    if lo < 0.0 || hi > 1.0 {
        return Err(Error::Unsupported(format!(
            "power study needs an alternative supported within [0, 1], got {alt}"
        )));
    }
    let stats = simulate_offset(alt, cfg, cfg.reps as u64);
    let outside = stats.iter().filter(|&&s| s < cv.g1 || s > cv.g2).count();
    Ok(outside as f64 / cfg.reps as f64)
}

pub const TABLE_CSV_HEADER: &str = "n,m,alpha,reps,seed,g1,g2";
pub const POWER_CSV_HEADER: &str = "alt,n,m,alpha,reps,seed,power";

/// One critical-value row in the table CSV format.
pub fn table_csv_row(cv: &CriticalValues) -> String {
    let c = &cv.config;
    format!(
        "{},{},{},{},{},{:.6},{:.6}",
        c.n, c.m, c.alpha, c.reps, c.master_seed, cv.g1, cv.g2
    )
}

/// One power-study row in the power CSV format.
pub fn power_csv_row(alt: BoundedDistribution, cfg: &TestConfig, value: f64) -> String {
    format!(
        "{},{},{},{},{},{},{:.6}",
        alt, cfg.n, cfg.m, cfg.alpha, cfg.reps, cfg.master_seed, value
    )
}

/// Parse a table CSV produced by [`table_csv_row`] back into rows. The
/// header line is mandatory and checked verbatim.
pub fn parse_table_csv(text: &str) -> Result<Vec<CriticalValues>> {
    let mut lines = text
        .lines()
        .enumerate()
        .filter(|(_, l)| !l.trim().is_empty());
    match lines.next() {
        Some((_, header)) if header.trim() == TABLE_CSV_HEADER => {}
        Some((i, header)) => {
            return Err(Error::Parse(format!(
                "line {}: expected header '{TABLE_CSV_HEADER}', got '{}'",
                i + 1,
                header.trim()
            )));
        }
        None => return Err(Error::Parse("empty critical-value table".into())),
    }
    let mut rows = Vec::new();
    for (i, line) in lines {
        let fields: Vec<&str> = line.trim().split(',').collect();
        if fields.len() != 7 {
            return Err(Error::Parse(format!(
                "line {}: expected 7 fields, got {}",
                i + 1,
                fields.len()
            )));
        }
        let field = |j: usize, what: &str| -> Result<f64> {
            fields[j].trim().parse::<f64>().map_err(|_| {
                Error::Parse(format!("line {}: invalid {what} '{}'", i + 1, fields[j]))
            })
        };
        let n = fields[0].trim().parse::<usize>().map_err(|_| {
            Error::Parse(format!(
                "line {}: invalid sample size '{}'",
                i + 1,
                fields[0]
            ))
        })?;
        let m = fields[1].trim().parse::<u32>().map_err(|_| {
            Error::Parse(format!(
                "line {}: invalid weight order '{}'",
                i + 1,
                fields[1]
            ))
        })?;
        let reps = fields[3].trim().parse::<usize>().map_err(|_| {
            Error::Parse(format!(
                "line {}: invalid replication count '{}'",
                i + 1,
                fields[3]
            ))
        })?;
        let master_seed = fields[4]
            .trim()
            .parse::<u64>()
            .map_err(|_| Error::Parse(format!("line {}: invalid seed '{}'", i + 1, fields[4])))?;
        let config = TestConfig {
            n,
            m,
            alpha: field(2, "significance level")?,
            reps,
            master_seed,
        };
        config.validate()?;
        rows.push(CriticalValues {
            g1: field(5, "lower critical value")?,
            g2: field(6, "upper critical value")?,
            config,
        });
    }
    Ok(rows)
}

/// Cap the worker pool used for replications. Takes effect once per
/// process; later calls and zero are ignored. Without the `parallel`
/// feature replications already run on one thread.
#[cfg(feature = "parallel")]
pub fn limit_threads(threads: usize) {
    if threads == 0 {
        return;
    }
    let _ = rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build_global();
}

#[cfg(not(feature = "parallel"))]
pub fn limit_threads(_threads: usize) {}
