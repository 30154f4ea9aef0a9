//! Sample ingestion, the empirical distribution function, and the plug-in
//! estimator of the weighted cumulative past measure:
//!
//! ```text
//! est_m = -1/(2(m+1)) * sum_{i=1}^{n-1} (x_{(i+1)}^{m+1} - x_{(i)}^{m+1}) (i/n)^2
//! ```
//!
//! The sum is the exact integral of `-1/2 * x^m F_n(x)^2` between the
//! smallest and largest order statistics, where `F_n` is the empirical cdf.
//! Ties contribute zero-width terms and need no special handling.

use crate::error::{Error, Result};
use std::path::Path;

/// A validated, ascending sequence of non-negative observations.
#[derive(Debug, Clone, PartialEq)]
pub struct Sample {
    values: Vec<f64>,
}

impl Sample {
    /// Sort and validate raw observations. Rejects empty input and any
    /// negative or non-finite value, reporting the offending input index.
    pub fn new(raw: Vec<f64>) -> Result<Self> {
        if raw.is_empty() {
            return Err(Error::InvalidSample("no observations".into()));
        }
        for (i, &x) in raw.iter().enumerate() {
            if !x.is_finite() {
                return Err(Error::InvalidSample(format!(
                    "non-finite value at index {i}"
                )));
            }
            if x < 0.0 {
                return Err(Error::InvalidSample(format!(
                    "negative value {x} at index {i}"
                )));
            }
        }
        let mut values = raw;
        values.sort_by(|a, b| a.partial_cmp(b).unwrap());
        Ok(Sample { values })
    }

    /// Parse the plain-text sample format: one observation per line, with an
    /// optional single leading header line starting with `#`.
    pub fn parse(text: &str) -> Result<Self> {
        let mut raw = Vec::new();
        for (lineno, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || (lineno == 0 && line.starts_with('#')) {
                continue;
            }
            let value = line.parse::<f64>().map_err(|_| {
                Error::Parse(format!(
                    "line {}: expected a number, got '{line}'",
                    lineno + 1
                ))
            })?;
            raw.push(value);
        }
        Sample::new(raw)
    }

    /// Load a sample file in the [`Sample::parse`] format.
    pub fn from_path<P: AsRef<Path>>(path: P) -> Result<Self> {
        Sample::parse(&std::fs::read_to_string(path)?)
    }

    pub fn n(&self) -> usize {
        self.values.len()
    }

    /// Observations in ascending order.
    pub fn values(&self) -> &[f64] {
        &self.values
    }

    /// Empirical distribution function: the fraction of observations `<= x`.
    pub fn ecdf(&self, x: f64) -> f64 {
        self.values.partition_point(|&v| v <= x) as f64 / self.values.len() as f64
    }
}

/// The plug-in estimator as a finite sum over order statistics. Zero for a
/// single observation or an all-tied sample; never positive.
pub fn empirical_wcpj(s: &Sample, m: u32) -> f64 {
    let v = s.values();
    let n = v.len() as f64;
    let p = m as i32 + 1;
    let mut acc = 0.0;
    for i in 1..v.len() {
        let w = i as f64 / n;
        acc += (v[i].powi(p) - v[i - 1].powi(p)) * w * w;
    }
    -acc / (2.0 * (m as f64 + 1.0))
}

/// Independent route to the same quantity: integrate `-1/2 * x^m F_n(x)^2`
/// piece by piece, reading the step cdf at each piece's midpoint instead of
/// using the rank bookkeeping of [`empirical_wcpj`].
pub fn empirical_wcpj_by_integration(s: &Sample, m: u32) -> f64 {
    let v = s.values();
    let p = m as i32 + 1;
    let mut acc = 0.0;
    for i in 1..v.len() {
        let (a, b) = (v[i - 1], v[i]);
        if a == b {
            continue;
        }
        let step = s.ecdf(0.5 * (a + b));
        acc += step * step * (b.powi(p) - a.powi(p)) / p as f64;
    }
    -0.5 * acc
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::montecarlo::derive_stream;
    use crate::BoundedDistribution;
    use proptest::prelude::*;

    #[test]
    fn new_sorts_and_validates() {
        let s = Sample::new(vec![0.4, 0.1, 0.3]).unwrap();
        assert_eq!(s.values(), &[0.1, 0.3, 0.4]);
        assert_eq!(Sample::new(vec![0.5]).unwrap().n(), 1);
        assert!(matches!(Sample::new(vec![]), Err(Error::InvalidSample(_))));
        let err = Sample::new(vec![0.2, -0.1]).unwrap_err();
        assert!(err.to_string().contains("index 1"), "{err}");
        assert!(Sample::new(vec![0.2, f64::NAN]).is_err());
    }

    #[test]
    fn ecdf_is_a_right_continuous_step_function() {
        let s = Sample::new(vec![1.0, 2.0, 3.0]).unwrap();
        assert_eq!(s.ecdf(2.0), 2.0 / 3.0);
        assert_eq!(s.ecdf(0.5), 0.0);
        assert_eq!(s.ecdf(5.0), 1.0);
        assert_eq!(s.ecdf(1.0), 1.0 / 3.0);
    }

    #[test]
    fn estimator_hand_case() {
        let s = Sample::new(vec![0.2, 0.4, 0.6, 0.8, 1.0]).unwrap();
        assert!((empirical_wcpj(&s, 1) - (-0.092)).abs() < 1e-12);
        assert!((empirical_wcpj_by_integration(&s, 1) - (-0.092)).abs() < 1e-12);
    }

    #[test]
    fn estimator_degenerate_cases() {
        let single = Sample::new(vec![0.7]).unwrap();
        assert_eq!(empirical_wcpj(&single, 1), 0.0);
        let tied = Sample::new(vec![0.3, 0.3, 0.3]).unwrap();
        assert_eq!(empirical_wcpj(&tied, 2), 0.0);
        assert_eq!(empirical_wcpj_by_integration(&tied, 2), 0.0);
    }

    #[test]
    fn estimator_scales_exactly_with_powers_of_two() {
        let s = Sample::new(vec![0.2, 0.4, 0.6, 0.8, 1.0]).unwrap();
        for m in 0..=3u32 {
            let base = empirical_wcpj(&s, m);
            let doubled: Vec<f64> = s.values().iter().map(|&x| 2.0 * x).collect();
            let scaled = empirical_wcpj(&Sample::new(doubled).unwrap(), m);
            assert_eq!(scaled, 2.0f64.powi(m as i32 + 1) * base);
        }
    }

    #[test]
    fn parse_skips_single_header_and_reports_line_numbers() {
        let s = Sample::parse("# draws\n0.5\n0.25\n").unwrap();
        assert_eq!(s.values(), &[0.25, 0.5]);
        let err = Sample::parse("0.5\nabc\n").unwrap_err();
        assert!(err.to_string().contains("line 2"), "{err}");
        // '#' only acts as a header marker on the first line
        assert!(Sample::parse("0.5\n# not a header\n").is_err());
    }

    #[test]
    fn from_path_round_trips() {
        let path = std::env::temp_dir().join(format!("extropy-sample-{}.txt", std::process::id()));
        std::fs::write(&path, "# three draws\n0.9\n0.1\n0.5\n").unwrap();
        let s = Sample::from_path(&path).unwrap();
        std::fs::remove_file(&path).ok();
        assert_eq!(s.values(), &[0.1, 0.5, 0.9]);
        assert!(matches!(
            Sample::from_path("/nonexistent/sample.txt"),
            Err(Error::Io(_))
        ));
    }

    #[test]
    fn estimator_agrees_with_integration_on_random_samples() {
        let u01 = BoundedDistribution::uniform(0.0, 1.0).unwrap();
        let mut stream = derive_stream(3, 0);
        for round in 0..200usize {
            let n = 2 + round % 49;
            let s = Sample::new(u01.sample(&mut stream, n)).unwrap();
            for m in 0..=2 {
                let a = empirical_wcpj(&s, m);
                let b = empirical_wcpj_by_integration(&s, m);
                assert!((a - b).abs() < 1e-12, "n={n} m={m}: {a} vs {b}");
            }
        }
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(128))]

        #[test]
        fn estimator_is_never_positive(
            raw in proptest::collection::vec(0.0f64..10.0, 1..50),
            m in 0u32..4,
        ) {
            let s = Sample::new(raw.clone()).unwrap();
            prop_assert!(empirical_wcpj(&s, m) <= 0.0);
        }

        #[test]
        fn sum_and_integration_agree(
            raw in proptest::collection::vec(0.0f64..10.0, 2..50),
            m in 0u32..3,
        ) {
            let s = Sample::new(raw.clone()).unwrap();
            let a = empirical_wcpj(&s, m);
            let b = empirical_wcpj_by_integration(&s, m);
            prop_assert!((a - b).abs() < 1e-9 * a.abs().max(1.0));
        }
    }
}
