//! Catalog of non-negative distributions with bounded support.
//!
//! | kind         | support  | cdf F(x)                              |
//! |--------------|----------|---------------------------------------|
//! | uniform(a,b) | `[a, b]` | `(x - a) / (b - a)`                   |
//! | powerlaw(l)  | `[0, 1]` | `x^l`, `l > 1`                        |
//! | beta(a,b)    | `[0, 1]` | regularized incomplete beta `I_x(a,b)`|
//!
//! The weighted cumulative past measures diverge to negative infinity on any
//! unbounded support, so the catalog is restricted to these three families
//! and stays closed. Every operation here is pure; sampling mutates only the
//! caller-supplied stream.

use crate::error::{Error, Result};
use crate::measures::MeasureKind;
use crate::montecarlo::RandomStream;
use rand::Rng;
use rand_distr::{Distribution, Gamma};
use statrs::function::beta::{beta_reg, ln_beta};

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum BoundedDistribution {
    Uniform { a: f64, b: f64 },
    PowerLaw { lambda: f64 },
    Beta { alpha: f64, beta: f64 },
}

impl BoundedDistribution {
    /// Uniform on `[a, b]` with `0 <= a < b`.
    pub fn uniform(a: f64, b: f64) -> Result<Self> {
        if !a.is_finite() || !b.is_finite() || !(0.0 <= a && a < b) {
            return Err(Error::InvalidParameter(format!(
                "uniform requires 0 <= a < b, got a={a}, b={b}"
            )));
        }
        Ok(BoundedDistribution::Uniform { a, b })
    }

    /// Power law on `[0, 1]` with cdf `x^lambda`, `lambda > 1`.
    pub fn power_law(lambda: f64) -> Result<Self> {
        if !lambda.is_finite() || lambda <= 1.0 {
            return Err(Error::InvalidParameter(format!(
                "power law requires lambda > 1, got {lambda}"
            )));
        }
        Ok(BoundedDistribution::PowerLaw { lambda })
    }

    /// Beta on `[0, 1]` with `alpha > 0`, `beta > 0`.
    pub fn beta(alpha: f64, beta: f64) -> Result<Self> {
        if !alpha.is_finite() || !beta.is_finite() || alpha <= 0.0 || beta <= 0.0 {
            return Err(Error::InvalidParameter(format!(
                "beta requires alpha > 0 and beta > 0, got alpha={alpha}, beta={beta}"
            )));
        }
        Ok(BoundedDistribution::Beta { alpha, beta })
    }

    /// Parse a spec string: `uniform:a,b`, `powerlaw:l`, or `beta:a,b`.
    pub fn parse(spec: &str) -> Result<Self> {
        let bad = || Error::Parse(format!("bad distribution spec '{spec}'"));
        let (kind, args) = spec.split_once(':').ok_or_else(bad)?;
        let nums: Vec<f64> = args
            .split(',')
            .map(|s| s.trim().parse::<f64>().map_err(|_| bad()))
            .collect::<Result<_>>()?;
        match (kind.trim(), nums.as_slice()) {
            ("uniform", [a, b]) => BoundedDistribution::uniform(*a, *b),
            ("powerlaw", [l]) => BoundedDistribution::power_law(*l),
            ("beta", [a, b]) => BoundedDistribution::beta(*a, *b),
            _ => Err(bad()),
        }
    }

    /// Support interval `(lo, hi)`.
    pub fn support(&self) -> (f64, f64) {
        match *self {
            BoundedDistribution::Uniform { a, b } => (a, b),
            BoundedDistribution::PowerLaw { .. } | BoundedDistribution::Beta { .. } => (0.0, 1.0),
        }
    }

    /// Cumulative distribution function; 0 below the support, 1 above it.
    pub fn cdf(&self, x: f64) -> f64 {
        let (lo, hi) = self.support();
        if x <= lo {
            return 0.0;
        }
        if x >= hi {
            return 1.0;
        }
        match *self {
            BoundedDistribution::Uniform { a, b } => (x - a) / (b - a),
            BoundedDistribution::PowerLaw { lambda } => x.powf(lambda),
            BoundedDistribution::Beta { alpha, beta } => beta_reg(alpha, beta, x),
        }
    }

    /// Probability density; 0 outside the support. Beta densities with a
    /// shape parameter below 1 diverge at the corresponding endpoint.
    pub fn pdf(&self, x: f64) -> f64 {
        let (lo, hi) = self.support();
        if x < lo || x > hi {
            return 0.0;
        }
        match *self {
            BoundedDistribution::Uniform { a, b } => 1.0 / (b - a),
            BoundedDistribution::PowerLaw { lambda } => lambda * x.powf(lambda - 1.0),
            BoundedDistribution::Beta { alpha, beta } => {
                if x == 0.0 || x == 1.0 {
                    let shape = if x == 0.0 { alpha } else { beta };
                    return match shape.partial_cmp(&1.0).unwrap() {
                        std::cmp::Ordering::Less => f64::INFINITY,
                        std::cmp::Ordering::Equal => (-ln_beta(alpha, beta)).exp(),
                        std::cmp::Ordering::Greater => 0.0,
                    };
                }
                ((alpha - 1.0) * x.ln() + (beta - 1.0) * (1.0 - x).ln() - ln_beta(alpha, beta))
                    .exp()
            }
        }
    }

    /// Quantile function: the infimum of `{x : F(x) >= u}`.
    pub fn quantile(&self, u: f64) -> Result<f64> {
        if !(0.0..=1.0).contains(&u) {
            return Err(Error::Domain(format!("quantile needs u in [0,1], got {u}")));
        }
        let (lo, hi) = self.support();
        if u == 0.0 {
            return Ok(lo);
        }
        if u == 1.0 {
            return Ok(hi);
        }
        Ok(match *self {
            BoundedDistribution::Uniform { a, b } => a + u * (b - a),
            BoundedDistribution::PowerLaw { lambda } => u.powf(1.0 / lambda),
            BoundedDistribution::Beta { alpha, beta } => beta_quantile(alpha, beta, u),
        })
    }

    /// Draw `count` values. Identical `(stream, count)` pairs reproduce the
    /// same output bit for bit. Beta draws compose two gamma variates.
    pub fn sample(&self, stream: &mut RandomStream, count: usize) -> Vec<f64> {
        match *self {
            BoundedDistribution::Uniform { a, b } => (0..count)
                .map(|_| a + (b - a) * stream.random::<f64>())
                .collect(),
            BoundedDistribution::PowerLaw { lambda } => (0..count)
                .map(|_| stream.random::<f64>().powf(1.0 / lambda))
                .collect(),
            BoundedDistribution::Beta { alpha, beta } => {
                let ga = Gamma::new(alpha, 1.0).expect("validated shape");
                let gb = Gamma::new(beta, 1.0).expect("validated shape");
                (0..count)
                    .map(|_| {
                        let x = ga.sample(stream);
                        let y = gb.sample(stream);
                        x / (x + y)
                    })
                    .collect()
            }
        }
    }
}

impl std::fmt::Display for BoundedDistribution {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match *self {
            BoundedDistribution::Uniform { a, b } => write!(f, "uniform:{a},{b}"),
            BoundedDistribution::PowerLaw { lambda } => write!(f, "powerlaw:{lambda}"),
            BoundedDistribution::Beta { alpha, beta } => write!(f, "beta:{alpha},{beta}"),
        }
    }
}

// Bracketed Newton iteration on the regularized incomplete beta function.
// The bracket never exceeds 1e-15 on exit, so composing with the cdf round
// trips well inside 1e-12.
fn beta_quantile(alpha: f64, beta: f64, u: f64) -> f64 {
    let (mut lo, mut hi) = (0.0f64, 1.0f64);
    let mut x = u;
    for _ in 0..200 {
        let diff = beta_reg(alpha, beta, x) - u;
        if diff == 0.0 {
            return x;
        }
        if diff > 0.0 {
            hi = x;
        } else {
            lo = x;
        }
        if hi - lo <= 1e-15 {
            break;
        }
        let density =
            ((alpha - 1.0) * x.ln() + (beta - 1.0) * (1.0 - x).ln() - ln_beta(alpha, beta)).exp();
        let newton = x - diff / density;
        x = if density > 0.0 && newton > lo && newton < hi {
            newton
        } else {
            0.5 * (lo + hi)
        };
    }
    0.5 * (lo + hi)
}

/// Exact value of `kind` for distributions where one is known; uniform and
/// power-law cover the whole measure family, the order-max and partial
/// variants additionally need the standard support `[0, 1]`. Beta has no
/// closed forms and always reports [`Error::NoClosedForm`].
pub fn closed_form_measure(dist: BoundedDistribution, kind: MeasureKind) -> Result<f64> {
    kind.validate()?;
    let unsupported = || Error::NoClosedForm {
        dist: dist.to_string(),
        measure: kind.to_string(),
    };
    match (dist, kind) {
        (BoundedDistribution::Uniform { a, b }, MeasureKind::Extropy) => Ok(-0.5 / (b - a)),
        (BoundedDistribution::Uniform { a, b }, MeasureKind::Crj | MeasureKind::Cpj) => {
            Ok(-(b - a) / 6.0)
        }
        (BoundedDistribution::Uniform { a, b }, MeasureKind::Wcrj) => {
            Ok((a - b) * (3.0 * a + b) / 24.0)
        }
        (BoundedDistribution::Uniform { a, b }, MeasureKind::Wcpj { m }) => {
            Ok(uniform_wcpj(a, b, m))
        }
        (BoundedDistribution::Uniform { a, b }, MeasureKind::OrderMaxWcpj { n, m })
            if a == 0.0 && b == 1.0 =>
        {
            Ok(-0.5 / (2.0 * n as f64 + m as f64 + 1.0))
        }
        (BoundedDistribution::Uniform { a, b }, MeasureKind::PhiP { p, m })
            if a == 0.0 && b == 1.0 =>
        {
            Ok(-p.powi(m as i32 + 3) / (2.0 * (m as f64 + 3.0)))
        }
        (BoundedDistribution::PowerLaw { lambda }, MeasureKind::Extropy) => {
            Ok(-lambda * lambda / (2.0 * (2.0 * lambda - 1.0)))
        }
        (BoundedDistribution::PowerLaw { lambda }, MeasureKind::Crj) => {
            Ok(-lambda * lambda / ((lambda + 1.0) * (2.0 * lambda + 1.0)))
        }
        (BoundedDistribution::PowerLaw { lambda }, MeasureKind::Cpj) => {
            Ok(-0.5 / (2.0 * lambda + 1.0))
        }
        (BoundedDistribution::PowerLaw { lambda }, MeasureKind::Wcrj) => {
            Ok(-lambda * lambda / (4.0 * (lambda + 1.0) * (lambda + 2.0)))
        }
        (BoundedDistribution::PowerLaw { lambda }, MeasureKind::Wcpj { m }) => {
            Ok(-1.0 / (4.0 * lambda + 2.0 * m as f64 + 2.0))
        }
        (BoundedDistribution::PowerLaw { lambda }, MeasureKind::OrderMaxWcpj { n, m }) => {
            Ok(-0.5 / (2.0 * n as f64 * lambda + m as f64 + 1.0))
        }
        _ => Err(unsupported()),
    }
}

// General-m weighted measure of Uniform(a, b):
//   -(b^{m+1} ((b-a)^2 m^2 + (b-a)(3b-5a) m + 2(b^2 - 3ab + 3a^2)) - 2 a^{m+3})
//     / (2 (b-a)^2 (m+1)(m+2)(m+3))
// At m = 0 this collapses to -(b-a)/6 and at m = 1 to ((a+3b)/4) * cpj.
fn uniform_wcpj(a: f64, b: f64, m: u32) -> f64 {
    let mf = m as f64;
    let w = b - a;
    let poly =
        w * w * mf * mf + w * (3.0 * b - 5.0 * a) * mf + 2.0 * (b * b - 3.0 * a * b + 3.0 * a * a);
    let num = b.powi(m as i32 + 1) * poly - 2.0 * a.powi(m as i32 + 3);
    -num / (2.0 * w * w * (mf + 1.0) * (mf + 2.0) * (mf + 3.0))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::montecarlo::derive_stream;
    use proptest::prelude::*;

    fn close(a: f64, b: f64, tol: f64) -> bool {
        (a - b).abs() < tol
    }

    #[test]
    fn constructors_enforce_parameter_ranges() {
        assert!(BoundedDistribution::uniform(-0.1, 1.0).is_err());
        assert!(BoundedDistribution::uniform(1.0, 1.0).is_err());
        assert!(BoundedDistribution::uniform(2.0, 1.0).is_err());
        assert!(BoundedDistribution::power_law(1.0).is_err());
        assert!(BoundedDistribution::power_law(0.5).is_err());
        assert!(BoundedDistribution::beta(0.0, 1.0).is_err());
        assert!(BoundedDistribution::beta(1.0, -2.0).is_err());
        assert!(BoundedDistribution::uniform(0.0, f64::INFINITY).is_err());
    }

    #[test]
    fn cdf_spot_values() {
        let u01 = BoundedDistribution::uniform(0.0, 1.0).unwrap();
        assert_eq!(u01.cdf(0.25), 0.25);
        let pl2 = BoundedDistribution::power_law(2.0).unwrap();
        assert_eq!(pl2.cdf(0.5), 0.25);
        let u12 = BoundedDistribution::uniform(1.0, 2.0).unwrap();
        assert_eq!(u12.cdf(0.5), 0.0);
        assert_eq!(u12.cdf(2.5), 1.0);
        let b11 = BoundedDistribution::beta(1.0, 1.0).unwrap();
        assert!(close(b11.cdf(0.7), 0.7, 1e-12));
    }

    #[test]
    fn pdf_spot_values() {
        let u01 = BoundedDistribution::uniform(0.0, 1.0).unwrap();
        assert_eq!(u01.pdf(0.3), 1.0);
        assert_eq!(u01.pdf(-0.1), 0.0);
        let pl2 = BoundedDistribution::power_law(2.0).unwrap();
        assert_eq!(pl2.pdf(0.5), 1.0);
        let b11 = BoundedDistribution::beta(1.0, 1.0).unwrap();
        assert!(close(b11.pdf(0.7), 1.0, 1e-12));
        let bhalf = BoundedDistribution::beta(0.5, 0.5).unwrap();
        assert!(bhalf.pdf(0.0).is_infinite());
    }

    #[test]
    fn quantile_spot_values_and_domain() {
        let u01 = BoundedDistribution::uniform(0.0, 1.0).unwrap();
        assert_eq!(u01.quantile(0.4).unwrap(), 0.4);
        let pl2 = BoundedDistribution::power_law(2.0).unwrap();
        assert_eq!(pl2.quantile(0.25).unwrap(), 0.5);
        let u24 = BoundedDistribution::uniform(2.0, 4.0).unwrap();
        assert_eq!(u24.quantile(0.5).unwrap(), 3.0);
        assert!(u01.quantile(-0.1).is_err());
        assert!(u01.quantile(1.1).is_err());
    }

    #[test]
    fn beta_quantile_round_trips_through_cdf() {
        for dist in [
            BoundedDistribution::beta(1.5, 1.5).unwrap(),
            BoundedDistribution::beta(2.0, 3.0).unwrap(),
            BoundedDistribution::beta(0.5, 0.5).unwrap(),
        ] {
            for i in 0..100 {
                let x = (i as f64 + 0.5) / 100.0;
                let q = dist.quantile(dist.cdf(x)).unwrap();
                assert!(close(q, x, 1e-12), "{dist}: {x} -> {q}");
            }
        }
    }

    #[test]
    fn sampling_is_deterministic_and_in_range() {
        for dist in [
            BoundedDistribution::uniform(1.0, 2.0).unwrap(),
            BoundedDistribution::power_law(2.5).unwrap(),
            BoundedDistribution::beta(1.5, 1.5).unwrap(),
        ] {
            let first = dist.sample(&mut derive_stream(9, 4), 500);
            let second = dist.sample(&mut derive_stream(9, 4), 500);
            assert_eq!(first, second);
            let (lo, hi) = dist.support();
            assert!(first.iter().all(|&x| (lo..=hi).contains(&x)));
        }
    }

    #[test]
    fn parse_and_display_round_trip() {
        for spec in [
            "uniform:0,1",
            "uniform:1.5,2.5",
            "powerlaw:2",
            "beta:1.5,1.5",
        ] {
            let d = BoundedDistribution::parse(spec).unwrap();
            assert_eq!(d.to_string(), spec);
        }
        assert!(BoundedDistribution::parse("uniform").is_err());
        assert!(BoundedDistribution::parse("uniform:0").is_err());
        assert!(BoundedDistribution::parse("normal:0,1").is_err());
        assert!(BoundedDistribution::parse("beta:x,1").is_err());
    }

    #[test]
    fn closed_form_spot_values() {
        let u01 = BoundedDistribution::uniform(0.0, 1.0).unwrap();
        let pl2 = BoundedDistribution::power_law(2.0).unwrap();
        let cases = [
            (u01, MeasureKind::Cpj, -1.0 / 6.0),
            (u01, MeasureKind::Crj, -1.0 / 6.0),
            (u01, MeasureKind::Wcrj, -1.0 / 24.0),
            (u01, MeasureKind::Wcpj { m: 0 }, -1.0 / 6.0),
            (u01, MeasureKind::Wcpj { m: 1 }, -0.125),
            (u01, MeasureKind::Extropy, -0.5),
            (u01, MeasureKind::OrderMaxWcpj { n: 2, m: 1 }, -1.0 / 12.0),
            (u01, MeasureKind::PhiP { p: 0.5, m: 1 }, -0.0078125),
            (pl2, MeasureKind::Wcpj { m: 1 }, -1.0 / 12.0),
            (pl2, MeasureKind::Wcpj { m: 2 }, -1.0 / 14.0),
            (pl2, MeasureKind::Crj, -4.0 / 15.0),
            (pl2, MeasureKind::Wcrj, -1.0 / 12.0),
            (pl2, MeasureKind::Cpj, -0.1),
            (pl2, MeasureKind::OrderMaxWcpj { n: 2, m: 1 }, -0.05),
        ];
        for (dist, kind, want) in cases {
            let got = closed_form_measure(dist, kind).unwrap();
            assert!(close(got, want, 1e-12), "{dist} {kind}: {got} vs {want}");
        }
    }

    #[test]
    fn closed_form_weighted_ratio_identities() {
        // uniform: wcpj(1) = ((a+3b)/4) * cpj; power law: ((2l+1)/(2l+2)) * cpj
        let u = BoundedDistribution::uniform(0.5, 2.5).unwrap();
        let w1 = closed_form_measure(u, MeasureKind::Wcpj { m: 1 }).unwrap();
        let c = closed_form_measure(u, MeasureKind::Cpj).unwrap();
        assert!(close(w1, (0.5 + 3.0 * 2.5) / 4.0 * c, 1e-12));

        let pl = BoundedDistribution::power_law(3.0).unwrap();
        let w1 = closed_form_measure(pl, MeasureKind::Wcpj { m: 1 }).unwrap();
        let c = closed_form_measure(pl, MeasureKind::Cpj).unwrap();
        assert!(close(w1, 7.0 / 8.0 * c, 1e-12));
    }

    #[test]
    fn closed_form_rejects_uncovered_pairs() {
        let b = BoundedDistribution::beta(1.5, 1.5).unwrap();
        assert!(matches!(
            closed_form_measure(b, MeasureKind::Cpj),
            Err(Error::NoClosedForm { .. })
        ));
        let u02 = BoundedDistribution::uniform(0.0, 2.0).unwrap();
        assert!(closed_form_measure(u02, MeasureKind::PhiP { p: 0.5, m: 1 }).is_err());
        assert!(closed_form_measure(u02, MeasureKind::OrderMaxWcpj { n: 2, m: 1 }).is_err());
        let pl = BoundedDistribution::power_law(2.0).unwrap();
        assert!(closed_form_measure(pl, MeasureKind::PhiP { p: 0.5, m: 1 }).is_err());
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        #[test]
        fn uniform_quantile_cdf_round_trip(
            a in 0.0f64..5.0,
            width in 0.1f64..5.0,
            frac in 0.001f64..0.999,
        ) {
            let d = BoundedDistribution::uniform(a, a + width).unwrap();
            let x = a + frac * width;
            prop_assert!((d.quantile(d.cdf(x)).unwrap() - x).abs() < 1e-12);
        }

        #[test]
        fn power_law_quantile_cdf_round_trip(
            lambda in 1.01f64..8.0,
            x in 0.001f64..0.999,
        ) {
            let d = BoundedDistribution::power_law(lambda).unwrap();
            prop_assert!((d.quantile(d.cdf(x)).unwrap() - x).abs() < 1e-12);
        }
    }
}
