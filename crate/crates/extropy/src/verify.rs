//! Named runtime checks covering the library's mathematical guarantees.
//!
//! Each check exercises one documented property end to end: closed forms
//! against quadrature, inequalities and bounds, estimator identities,
//! conditional-measure behavior, and the Monte Carlo engine's determinism
//! and calibration. The CLI exposes the suite as `verify-properties`, and
//! the test suite asserts that every check passes.

use crate::conditional::{
    conditional_wcpj, conditional_wcpj_extropy_bound, expected_conditional_wcpj,
    partition_from_breakpoints,
};
use crate::distributions::{closed_form_measure, BoundedDistribution};
use crate::empirical::{empirical_wcpj, empirical_wcpj_by_integration, Sample};
use crate::error::Result;
use crate::measures::{
    integrate, numeric_measure, phi_p, wcpj, wcpj_cdf_lower_bound, wcpj_extropy_bound,
    wcpj_linear_transform, wcpj_offset_support_bound, wcpj_order_max, wcpj_support_bounds,
    wcpj_via_tail_expectation, MeasureKind, QuadratureConfig,
};
use crate::montecarlo::{
    critical_values, derive_stream, power, simulate_statistic, simulate_statistic_sequential,
    TestConfig,
};
use rand::RngCore;

/// Result of one named check.
#[derive(Debug, Clone)]
pub struct CheckOutcome {
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

type CheckResult = std::result::Result<String, String>;
type Check = (&'static str, fn() -> CheckResult);

fn lib<T>(r: Result<T>) -> std::result::Result<T, String> {
    r.map_err(|e| e.to_string())
}

fn uniform(a: f64, b: f64) -> BoundedDistribution {
    BoundedDistribution::uniform(a, b).expect("grid parameters are valid")
}

fn power_law(lambda: f64) -> BoundedDistribution {
    BoundedDistribution::power_law(lambda).expect("grid parameters are valid")
}

fn beta(alpha: f64, beta: f64) -> BoundedDistribution {
    BoundedDistribution::beta(alpha, beta).expect("grid parameters are valid")
}

fn catalog() -> Vec<BoundedDistribution> {
    vec![
        uniform(0.0, 1.0),
        uniform(1.0, 2.0),
        uniform(0.0, 2.0),
        uniform(0.5, 2.5),
        power_law(1.5),
        power_law(2.0),
        power_law(3.0),
    ]
}

fn betas() -> Vec<BoundedDistribution> {
    vec![beta(1.5, 1.5), beta(2.0, 3.0), beta(1.0, 1.0)]
}

fn quad() -> QuadratureConfig {
    QuadratureConfig::default()
}

/// Run the whole suite. Outcomes are reported in a fixed order; nothing
/// short-circuits, so a caller always sees every check's status.
pub fn run_all_checks() -> Vec<CheckOutcome> {
    let checks: Vec<Check> = vec![
        ("quantile_cdf_roundtrip", quantile_cdf_roundtrip),
        (
            "closed_form_matches_quadrature",
            closed_form_matches_quadrature,
        ),
        (
            "weighted_unweighted_ratio_identities",
            weighted_unweighted_ratio_identities,
        ),
        ("sampling_matches_cdf", sampling_matches_cdf),
        (
            "order_zero_weight_recovers_cpj",
            order_zero_weight_recovers_cpj,
        ),
        (
            "tail_expectation_route_agreement",
            tail_expectation_route_agreement,
        ),
        (
            "nondegenerate_measure_strictly_negative",
            nondegenerate_measure_strictly_negative,
        ),
        ("cdf_moment_lower_bound", cdf_moment_lower_bound),
        (
            "stochastic_order_monotonicity",
            stochastic_order_monotonicity,
        ),
        (
            "maximum_measure_dominates_parent",
            maximum_measure_dominates_parent,
        ),
        (
            "maximum_measure_route_agreement",
            maximum_measure_route_agreement,
        ),
        (
            "extropy_exponential_upper_bound",
            extropy_exponential_upper_bound,
        ),
        ("zero_based_support_bounds", zero_based_support_bounds),
        ("shifted_support_upper_bound", shifted_support_upper_bound),
        ("linear_transform_expansion", linear_transform_expansion),
        ("partial_measure_behavior", partial_measure_behavior),
        (
            "estimator_matches_step_integration",
            estimator_matches_step_integration,
        ),
        ("estimator_nonpositive", estimator_nonpositive),
        ("estimator_scale_homogeneity", estimator_scale_homogeneity),
        (
            "estimator_approaches_population_value",
            estimator_approaches_population_value,
        ),
        (
            "trivial_partition_preserves_measure",
            trivial_partition_preserves_measure,
        ),
        (
            "conditioning_never_increases_measure",
            conditioning_never_increases_measure,
        ),
        (
            "partition_refinement_monotone",
            partition_refinement_monotone,
        ),
        (
            "conditional_atom_extropy_bound",
            conditional_atom_extropy_bound,
        ),
        (
            "streams_reproducible_and_distinct",
            streams_reproducible_and_distinct,
        ),
        (
            "simulation_bitwise_repeatable",
            simulation_bitwise_repeatable,
        ),
        ("parallel_matches_sequential", parallel_matches_sequential),
        (
            "critical_values_ordered_and_negative",
            critical_values_ordered_and_negative,
        ),
        ("interval_nests_across_alpha", interval_nests_across_alpha),
        (
            "interval_narrows_with_sample_size",
            interval_narrows_with_sample_size,
        ),
        ("size_matches_alpha", size_matches_alpha),
        (
            "simulated_statistics_nonpositive",
            simulated_statistics_nonpositive,
        ),
    ];
    checks
        .into_iter()
        .map(|(name, f)| match f() {
            Ok(detail) => CheckOutcome {
                name,
                passed: true,
                detail,
            },
            Err(detail) => CheckOutcome {
                name,
                passed: false,
                detail,
            },
        })
        .collect()
}

fn quantile_cdf_roundtrip() -> CheckResult {
    let mut cases = 0;
    for dist in catalog().into_iter().chain(betas()) {
        let (lo, hi) = dist.support();
        if lib(dist.quantile(0.0))? != lo || lib(dist.quantile(1.0))? != hi {
            return Err(format!("{dist}: endpoint quantiles do not hit the support"));
        }
        for i in 1..100 {
            let u = i as f64 / 100.0;
            let x = lib(dist.quantile(u))?;
            let back = dist.cdf(x);
            if (back - u).abs() > 1e-9 {
                return Err(format!("{dist}: cdf(quantile({u})) = {back}"));
            }
            cases += 1;
        }
    }
    Ok(format!("{cases} grid points"))
}

fn closed_form_matches_quadrature() -> CheckResult {
    let mut kinds: Vec<(BoundedDistribution, MeasureKind)> = Vec::new();
    for dist in catalog() {
        for kind in [
            MeasureKind::Extropy,
            MeasureKind::Crj,
            MeasureKind::Cpj,
            MeasureKind::Wcrj,
        ] {
            kinds.push((dist, kind));
        }
        for m in 0..=3 {
            kinds.push((dist, MeasureKind::Wcpj { m }));
        }
    }
    for dist in [
        uniform(0.0, 1.0),
        power_law(1.5),
        power_law(2.0),
        power_law(3.0),
    ] {
        for n in 1..=3 {
            for m in 0..=2 {
                kinds.push((dist, MeasureKind::OrderMaxWcpj { n, m }));
            }
        }
    }
    for p in [0.25, 0.5, 0.75] {
        for m in 0..=3 {
            kinds.push((uniform(0.0, 1.0), MeasureKind::PhiP { p, m }));
        }
    }
    let mut cases = 0;
    for (dist, kind) in kinds {
        let closed = lib(closed_form_measure(dist, kind))?;
        let numeric = lib(numeric_measure(dist, kind, &quad()))?;
        if (closed - numeric).abs() >= 1e-8 {
            return Err(format!(
                "{dist} {kind}: closed {closed} vs quadrature {numeric}"
            ));
        }
        cases += 1;
    }
    Ok(format!("{cases} closed forms within 1e-8"))
}

fn weighted_unweighted_ratio_identities() -> CheckResult {
    let mut cases = 0;
    for (a, b) in [(0.0, 1.0), (1.0, 2.0), (0.0, 2.0), (0.5, 2.5)] {
        let dist = uniform(a, b);
        let w1 = lib(closed_form_measure(dist, MeasureKind::Wcpj { m: 1 }))?;
        let cpj = lib(closed_form_measure(dist, MeasureKind::Cpj))?;
        if (w1 - (a + 3.0 * b) / 4.0 * cpj).abs() > 1e-12 {
            return Err(format!("{dist}: first-order weighted ratio broke"));
        }
        let wcrj = lib(closed_form_measure(dist, MeasureKind::Wcrj))?;
        let crj = lib(closed_form_measure(dist, MeasureKind::Crj))?;
        if (wcrj - (3.0 * a + b) / 4.0 * crj).abs() > 1e-12 {
            return Err(format!("{dist}: residual weighted ratio broke"));
        }
        cases += 2;
    }
    for lambda in [1.5, 2.0, 3.0] {
        let dist = power_law(lambda);
        let w1 = lib(closed_form_measure(dist, MeasureKind::Wcpj { m: 1 }))?;
        let cpj = lib(closed_form_measure(dist, MeasureKind::Cpj))?;
        let ratio = (2.0 * lambda + 1.0) / (2.0 * lambda + 2.0);
        if (w1 - ratio * cpj).abs() > 1e-12 {
            return Err(format!("{dist}: first-order weighted ratio broke"));
        }
        cases += 1;
    }
    Ok(format!("{cases} ratio identities"))
}

fn sampling_matches_cdf() -> CheckResult {
    let dists = [
        uniform(0.0, 1.0),
        uniform(1.0, 3.0),
        power_law(2.0),
        beta(1.5, 1.5),
        beta(2.0, 3.0),
        beta(1.0, 1.0),
    ];
    let n = 10_000;
    for (k, dist) in dists.into_iter().enumerate() {
        let mut stream = derive_stream(101, k as u64);
        let mut values = dist.sample(&mut stream, n);
        values.sort_by(f64::total_cmp);
        let mut ks: f64 = 0.0;
        for (i, &x) in values.iter().enumerate() {
            let f = dist.cdf(x);
            ks = ks
                .max(((i + 1) as f64 / n as f64 - f).abs())
                .max((f - i as f64 / n as f64).abs());
        }
        if ks >= 0.02 {
            return Err(format!("{dist}: KS distance {ks:.4} at n = {n}"));
        }
    }
    Ok(format!("6 distributions, KS < 0.02 at n = {n}"))
}

fn order_zero_weight_recovers_cpj() -> CheckResult {
    let mut cases = 0;
    for dist in catalog() {
        let w0 = lib(closed_form_measure(dist, MeasureKind::Wcpj { m: 0 }))?;
        let cpj = lib(closed_form_measure(dist, MeasureKind::Cpj))?;
        if (w0 - cpj).abs() > 1e-12 {
            return Err(format!("{dist}: closed forms disagree at order zero"));
        }
        cases += 1;
    }
    for dist in betas() {
        let w0 = lib(numeric_measure(dist, MeasureKind::Wcpj { m: 0 }, &quad()))?;
        let cpj = lib(numeric_measure(dist, MeasureKind::Cpj, &quad()))?;
        if (w0 - cpj).abs() > 1e-10 {
            return Err(format!("{dist}: quadratures disagree at order zero"));
        }
        cases += 1;
    }
    Ok(format!("{cases} distributions"))
}

fn tail_expectation_route_agreement() -> CheckResult {
    let mut cases = 0;
    for dist in [
        uniform(0.0, 1.0),
        uniform(0.0, 2.0),
        uniform(1.0, 2.0),
        power_law(2.0),
    ] {
        for m in 1..=2 {
            let direct = lib(wcpj(dist, m, &quad()))?;
            let via_tail = lib(wcpj_via_tail_expectation(dist, m, &quad()))?;
            if (direct - via_tail).abs() > 1e-6 {
                return Err(format!(
                    "{dist} m={m}: direct {direct} vs tail expectation {via_tail}"
                ));
            }
            cases += 1;
        }
    }
    Ok(format!("{cases} cases"))
}

fn nondegenerate_measure_strictly_negative() -> CheckResult {
    let mut cases = 0;
    for dist in catalog().into_iter().chain(betas()) {
        for m in 0..=2 {
            let w = lib(wcpj(dist, m, &quad()))?;
            if w >= -1e-6 {
                return Err(format!("{dist} m={m}: measure {w} is not negative"));
            }
            cases += 1;
        }
    }
    Ok(format!("{cases} cases"))
}

fn cdf_moment_lower_bound() -> CheckResult {
    let mut cases = 0;
    for dist in catalog().into_iter().chain(betas()) {
        for m in 0..=2 {
            let w = lib(wcpj(dist, m, &quad()))?;
            let bound = lib(wcpj_cdf_lower_bound(dist, m, &quad()))?;
            if w < bound - 1e-9 {
                return Err(format!("{dist} m={m}: {w} below moment bound {bound}"));
            }
            cases += 1;
        }
    }
    Ok(format!("{cases} cases"))
}

fn stochastic_order_monotonicity() -> CheckResult {
    let pairs = [
        (uniform(0.0, 1.0), uniform(0.3, 1.0)),
        (uniform(0.3, 1.0), uniform(0.6, 1.0)),
        (uniform(0.0, 2.0), uniform(1.0, 2.0)),
        (uniform(0.5, 2.0), uniform(1.5, 2.0)),
        (power_law(1.5), power_law(2.0)),
        (power_law(2.0), power_law(3.0)),
        (uniform(0.0, 1.0), power_law(2.0)),
        (beta(1.0, 2.0), uniform(0.0, 1.0)),
    ];
    let mut cases = 0;
    for (smaller, larger) in pairs {
        let hi = smaller.support().1.max(larger.support().1);
        for j in 0..=200 {
            let x = hi * j as f64 / 200.0;
            if smaller.cdf(x) < larger.cdf(x) - 1e-12 {
                return Err(format!(
                    "{smaller} vs {larger}: not stochastically ordered at x = {x}"
                ));
            }
        }
        for m in 0..=2 {
            let ws = lib(wcpj(smaller, m, &quad()))?;
            let wl = lib(wcpj(larger, m, &quad()))?;
            if ws > wl + 1e-10 {
                return Err(format!(
                    "{smaller} vs {larger} m={m}: {ws} should not exceed {wl}"
                ));
            }
            cases += 1;
        }
    }
    Ok(format!("{cases} ordered pairs"))
}

fn maximum_measure_dominates_parent() -> CheckResult {
    let mut cases = 0;
    for dist in [uniform(0.0, 1.0), power_law(2.0)] {
        for m in 0..=2 {
            let base = lib(closed_form_measure(dist, MeasureKind::Wcpj { m }))?;
            let mut previous = f64::NEG_INFINITY;
            for n in 1..=10 {
                let om = lib(closed_form_measure(
                    dist,
                    MeasureKind::OrderMaxWcpj { n, m },
                ))?;
                if om < base - 1e-12 {
                    return Err(format!("{dist} n={n} m={m}: maximum measure below parent"));
                }
                if om < previous - 1e-12 {
                    return Err(format!("{dist} n={n} m={m}: not monotone in n"));
                }
                previous = om;
                cases += 1;
            }
            let at_one = lib(closed_form_measure(
                dist,
                MeasureKind::OrderMaxWcpj { n: 1, m },
            ))?;
            if (at_one - base).abs() > 1e-12 {
                return Err(format!("{dist} m={m}: n = 1 does not recover the parent"));
            }
        }
    }
    let wide = uniform(0.0, 2.0);
    for m in 0..=1 {
        let base = lib(wcpj(wide, m, &quad()))?;
        let mut previous = f64::NEG_INFINITY;
        for n in 1..=5 {
            let om = lib(wcpj_order_max(wide, n, m, &quad()))?;
            if om < base - 1e-9 || om < previous - 1e-10 {
                return Err(format!(
                    "{wide} n={n} m={m}: quadrature route broke monotonicity"
                ));
            }
            previous = om;
            cases += 1;
        }
    }
    for n in 1..=4 {
        let u = lib(closed_form_measure(
            uniform(0.0, 1.0),
            MeasureKind::OrderMaxWcpj { n, m: 1 },
        ))?;
        let p = lib(closed_form_measure(
            power_law(2.0),
            MeasureKind::OrderMaxWcpj { n, m: 1 },
        ))?;
        if (u - p).abs() < 1e-3 {
            return Err(format!(
                "n={n}: maximum measures fail to separate distributions"
            ));
        }
    }
    Ok(format!("{cases} cases"))
}

fn maximum_measure_route_agreement() -> CheckResult {
    let u01 = uniform(0.0, 1.0);
    let mut cases = 0;
    for n in 2..=3 {
        for m in 0..=2 {
            let om = lib(closed_form_measure(u01, MeasureKind::OrderMaxWcpj { n, m }))?;
            let as_power = lib(closed_form_measure(
                power_law(n as f64),
                MeasureKind::Wcpj { m },
            ))?;
            if (om - as_power).abs() > 1e-12 {
                return Err(format!(
                    "uniform maximum of {n} vs power law {n} at m={m}: {om} vs {as_power}"
                ));
            }
            let numeric = lib(wcpj_order_max(u01, n, m, &quad()))?;
            if (om - numeric).abs() > 1e-8 {
                return Err(format!("n={n} m={m}: quadrature {numeric} vs closed {om}"));
            }
            cases += 2;
        }
    }
    for m in 0..=2 {
        let om = lib(closed_form_measure(
            power_law(1.5),
            MeasureKind::OrderMaxWcpj { n: 2, m },
        ))?;
        let as_power = lib(closed_form_measure(power_law(3.0), MeasureKind::Wcpj { m }))?;
        if (om - as_power).abs() > 1e-12 {
            return Err(format!("power-law maximum composition broke at m={m}"));
        }
        cases += 1;
    }
    Ok(format!("{cases} cases"))
}

fn extropy_exponential_upper_bound() -> CheckResult {
    let u01 = uniform(0.0, 1.0);
    let b1 = lib(wcpj_extropy_bound(u01, 1, &quad()))?;
    if (b1 + 0.5 * (-4.0f64).exp()).abs() > 1e-9 {
        return Err(format!("standard uniform m=1 bound {b1} missed its oracle"));
    }
    let b0 = lib(wcpj_extropy_bound(u01, 0, &quad()))?;
    if (b0 + 0.5 * (-3.0f64).exp()).abs() > 1e-9 {
        return Err(format!("standard uniform m=0 bound {b0} missed its oracle"));
    }
    let mut cases = 0;
    for dist in [
        u01,
        uniform(0.0, 2.0),
        uniform(1.0, 2.0),
        power_law(1.5),
        power_law(2.0),
    ] {
        for m in 0..=2 {
            let w = lib(wcpj(dist, m, &quad()))?;
            let bound = lib(wcpj_extropy_bound(dist, m, &quad()))?;
            if w > bound + 1e-9 {
                return Err(format!("{dist} m={m}: {w} exceeds bound {bound}"));
            }
            cases += 1;
        }
    }
    Ok(format!("{cases} cases"))
}

fn zero_based_support_bounds() -> CheckResult {
    let u01 = uniform(0.0, 1.0);
    let (lower, upper) = lib(wcpj_support_bounds(u01, 1, &quad()))?;
    if (lower + 1.0 / 6.0).abs() > 1e-9 || (upper - 0.23424418468469407).abs() > 1e-9 {
        return Err(format!(
            "standard uniform m=1 bounds ({lower}, {upper}) missed their oracles"
        ));
    }
    let mut cases = 0;
    for dist in [
        u01,
        uniform(0.0, 2.0),
        power_law(1.5),
        power_law(2.0),
        beta(1.5, 1.5),
        beta(2.0, 3.0),
    ] {
        for m in 1..=3 {
            let w = lib(wcpj(dist, m, &quad()))?;
            let (lower, upper) = lib(wcpj_support_bounds(dist, m, &quad()))?;
            if w < lower - 1e-9 || w > upper + 1e-9 {
                return Err(format!("{dist} m={m}: {w} outside [{lower}, {upper}]"));
            }
            cases += 1;
        }
    }
    Ok(format!("{cases} cases"))
}

fn shifted_support_upper_bound() -> CheckResult {
    let mut cases = 0;
    for dist in [uniform(1.0, 2.0), uniform(0.5, 1.5), uniform(2.0, 3.0)] {
        for m in 1..=2 {
            let w = lib(wcpj(dist, m, &quad()))?;
            let bound = lib(wcpj_offset_support_bound(dist, m, &quad()))?;
            if w > bound + 1e-9 {
                return Err(format!("{dist} m={m}: {w} exceeds offset bound {bound}"));
            }
            cases += 1;
        }
    }
    Ok(format!("{cases} cases"))
}

fn linear_transform_expansion() -> CheckResult {
    let u01 = uniform(0.0, 1.0);
    let mut cases = 0;
    for (a, b) in [(2.0, 0.0), (1.0, 1.0), (0.5, 0.25), (2.0, 1.0)] {
        for m in 1..=3 {
            let base: Vec<f64> = (0..=m)
                .map(|i| closed_form_measure(u01, MeasureKind::Wcpj { m: i }))
                .collect::<Result<_>>()
                .map_err(|e| e.to_string())?;
            let expanded = lib(wcpj_linear_transform(&base, a, b, m))?;
            let direct = lib(closed_form_measure(
                uniform(b, a + b),
                MeasureKind::Wcpj { m },
            ))?;
            if (expanded - direct).abs() > 1e-10 {
                return Err(format!(
                    "uniform base, a={a} b={b} m={m}: {expanded} vs {direct}"
                ));
            }
            cases += 1;
        }
    }
    let pl = power_law(2.0);
    let (a, b) = (2.0, 0.5);
    for m in 1..=2 {
        let base: Vec<f64> = (0..=m)
            .map(|i| closed_form_measure(pl, MeasureKind::Wcpj { m: i }))
            .collect::<Result<_>>()
            .map_err(|e| e.to_string())?;
        let expanded = lib(wcpj_linear_transform(&base, a, b, m))?;
        let direct = -0.5
            * lib(integrate(
                |y| y.powi(m as i32) * pl.cdf((y - b) / a).powi(2),
                b,
                a + b,
                &quad(),
            ))?;
        if (expanded - direct).abs() > 1e-8 {
            return Err(format!("power-law base, m={m}: {expanded} vs {direct}"));
        }
        cases += 1;
    }
    Ok(format!("{cases} transforms"))
}

fn partial_measure_behavior() -> CheckResult {
    for dist in [uniform(0.0, 1.0), power_law(2.0)] {
        let mut previous = f64::INFINITY;
        for p in [0.2, 0.4, 0.6, 0.8, 0.95] {
            let value = lib(phi_p(dist, p, 1, &quad()))?;
            if value > previous + 1e-12 {
                return Err(format!("{dist}: partial measure rose at p = {p}"));
            }
            previous = value;
        }
    }
    for dist in [uniform(0.0, 1.0), power_law(2.0), beta(1.5, 1.5)] {
        let near_one = lib(phi_p(dist, 1.0 - 1e-9, 1, &quad()))?;
        let full = lib(wcpj(dist, 1, &quad()))?;
        if (near_one - full).abs() > 1e-6 {
            return Err(format!(
                "{dist}: partial measure at p near 1 is {near_one}, full is {full}"
            ));
        }
    }
    let at_half_uniform = lib(phi_p(uniform(0.0, 1.0), 0.5, 1, &quad()))?;
    let at_half_power = lib(phi_p(power_law(2.0), 0.5, 1, &quad()))?;
    if (at_half_uniform - at_half_power).abs() < 1e-3 {
        return Err("partial measure failed to separate distinct cdfs at p = 0.5".into());
    }
    Ok("monotone in p, continuous at p = 1, separates cdfs".into())
}

fn estimator_matches_step_integration() -> CheckResult {
    let u01 = uniform(0.0, 1.0);
    let mut cases = 0;
    for k in 0..300u64 {
        let mut stream = derive_stream(31, k);
        let n = 2 + (k % 49) as usize;
        let m = (k % 3) as u32;
        let sample = lib(Sample::new(u01.sample(&mut stream, n)))?;
        let by_sum = empirical_wcpj(&sample, m);
        let by_integration = empirical_wcpj_by_integration(&sample, m);
        if (by_sum - by_integration).abs() > 1e-12 {
            return Err(format!(
                "sample {k} (n={n}, m={m}): sum {by_sum} vs integration {by_integration}"
            ));
        }
        cases += 1;
    }
    Ok(format!("{cases} random samples within 1e-12"))
}

fn estimator_nonpositive() -> CheckResult {
    let dists = [
        uniform(0.0, 1.0),
        uniform(0.0, 2.0),
        power_law(2.0),
        beta(2.0, 3.0),
    ];
    let mut cases = 0;
    for k in 0..200u64 {
        let dist = dists[(k % 4) as usize];
        let mut stream = derive_stream(57, k);
        let n = 2 + (k % 30) as usize;
        let m = (k % 3) as u32;
        let sample = lib(Sample::new(dist.sample(&mut stream, n)))?;
        let value = empirical_wcpj(&sample, m);
        if value > 0.0 {
            return Err(format!("{dist} sample {k}: positive estimate {value}"));
        }
        cases += 1;
    }
    Ok(format!("{cases} random samples"))
}

fn estimator_scale_homogeneity() -> CheckResult {
    let mut stream = derive_stream(73, 0);
    let mut bases = vec![vec![0.2, 0.5, 0.9]];
    bases.push(uniform(0.0, 1.0).sample(&mut stream, 20));
    let mut cases = 0;
    for base in bases {
        let sample = lib(Sample::new(base.clone()))?;
        for c in [2.0, 0.5] {
            let scaled = lib(Sample::new(base.iter().map(|v| c * v).collect()))?;
            for m in 0..=2 {
                let expected = c.powi(m as i32 + 1) * empirical_wcpj(&sample, m);
                let got = empirical_wcpj(&scaled, m);
                let tol = 1e-12 * expected.abs().max(1.0);
                if (got - expected).abs() > tol {
                    return Err(format!(
                        "scale {c}, m={m}: {got} vs {expected} from homogeneity"
                    ));
                }
                cases += 1;
            }
        }
    }
    Ok(format!("{cases} scalings"))
}

fn estimator_approaches_population_value() -> CheckResult {
    let u01 = uniform(0.0, 1.0);
    let reps = 60;
    let mut total = 0.0;
    for k in 0..reps {
        let mut stream = derive_stream(97, k);
        let sample = lib(Sample::new(u01.sample(&mut stream, 2000)))?;
        total += empirical_wcpj(&sample, 1);
    }
    let mean = total / reps as f64;
    if (mean + 0.125).abs() > 0.01 {
        return Err(format!(
            "mean estimate {mean} too far from -0.125 at n = 2000"
        ));
    }
    let cfg = TestConfig {
        n: 50,
        m: 1,
        alpha: 0.05,
        reps: 2000,
        master_seed: 13,
    };
    let stats = lib(simulate_statistic(u01, &cfg))?;
    let sim_mean = stats.iter().sum::<f64>() / stats.len() as f64;
    if (sim_mean + 0.125).abs() > 0.02 {
        return Err(format!(
            "simulated mean {sim_mean} too far from -0.125 at n = 50"
        ));
    }
    Ok(format!("n=2000 mean {mean:.4}, n=50 mean {sim_mean:.4}"))
}

fn trivial_partition_preserves_measure() -> CheckResult {
    let mut cases = 0;
    for dist in [uniform(0.0, 1.0), uniform(1.0, 2.0), power_law(2.0)] {
        let part = lib(partition_from_breakpoints(dist, &[]))?;
        for m in 0..=2 {
            let plain = lib(wcpj(dist, m, &quad()))?;
            let cond = lib(conditional_wcpj(dist, &part, 0, m, &quad()))?;
            let expected = lib(expected_conditional_wcpj(dist, &part, m, &quad()))?;
            if (cond - plain).abs() > 1e-9 || (expected - plain).abs() > 1e-9 {
                return Err(format!("{dist} m={m}: trivial partition moved the measure"));
            }
            cases += 1;
        }
    }
    Ok(format!("{cases} cases"))
}

fn conditioning_never_increases_measure() -> CheckResult {
    let grid: Vec<(BoundedDistribution, Vec<f64>)> = vec![
        (uniform(0.0, 1.0), vec![0.5]),
        (uniform(0.0, 1.0), vec![0.25, 0.5, 0.75]),
        (uniform(0.0, 2.0), vec![0.8, 1.3]),
        (uniform(1.0, 2.0), vec![1.5]),
        (power_law(2.0), vec![0.3, 0.7]),
        (power_law(1.5), vec![0.5]),
        (beta(2.0, 3.0), vec![0.4]),
        (beta(1.5, 1.5), vec![0.35, 0.65]),
    ];
    let mut cases = 0;
    for (dist, breaks) in grid {
        let part = lib(partition_from_breakpoints(dist, &breaks))?;
        for m in 0..=2 {
            let plain = lib(wcpj(dist, m, &quad()))?;
            let expected = lib(expected_conditional_wcpj(dist, &part, m, &quad()))?;
            if expected > plain - 1e-9 {
                return Err(format!(
                    "{dist} m={m}: conditional expectation {expected} not strictly below {plain}"
                ));
            }
            cases += 1;
        }
    }
    let part = lib(partition_from_breakpoints(uniform(0.0, 1.0), &[0.5]))?;
    let worked = lib(expected_conditional_wcpj(
        uniform(0.0, 1.0),
        &part,
        1,
        &quad(),
    ))?;
    if (worked + 7.0 / 48.0).abs() > 1e-9 {
        return Err(format!("worked half-split case gave {worked}"));
    }
    Ok(format!("{cases} partitioned cases, worked case -7/48"))
}

fn partition_refinement_monotone() -> CheckResult {
    let chains: Vec<(BoundedDistribution, Vec<Vec<f64>>)> = vec![
        (
            uniform(0.0, 1.0),
            vec![
                vec![0.5],
                vec![0.25, 0.5, 0.75],
                vec![0.125, 0.25, 0.375, 0.5, 0.625, 0.75, 0.875],
            ],
        ),
        (power_law(2.0), vec![vec![0.5], vec![0.25, 0.5, 0.75]]),
    ];
    let mut cases = 0;
    for (dist, chain) in chains {
        for m in 0..=1 {
            let mut previous = lib(wcpj(dist, m, &quad()))?;
            for breaks in &chain {
                let part = lib(partition_from_breakpoints(dist, breaks))?;
                let expected = lib(expected_conditional_wcpj(dist, &part, m, &quad()))?;
                if expected > previous + 1e-10 {
                    return Err(format!(
                        "{dist} m={m}: refinement to {} atoms raised the measure",
                        part.atom_count()
                    ));
                }
                previous = expected;
                cases += 1;
            }
        }
    }
    Ok(format!("{cases} refinement steps"))
}

fn conditional_atom_extropy_bound() -> CheckResult {
    let grid: Vec<(BoundedDistribution, Vec<f64>)> = vec![
        (uniform(0.0, 1.0), vec![0.5]),
        (uniform(1.0, 2.0), vec![1.4]),
        (power_law(2.0), vec![0.6]),
    ];
    let mut cases = 0;
    for (dist, breaks) in grid {
        let part = lib(partition_from_breakpoints(dist, &breaks))?;
        for j in 0..part.atom_count() {
            for m in 0..=1 {
                let value = lib(conditional_wcpj(dist, &part, j, m, &quad()))?;
                let bound = lib(conditional_wcpj_extropy_bound(dist, &part, j, m, &quad()))?;
                if value > bound + 1e-9 {
                    return Err(format!(
                        "{dist} atom {j} m={m}: {value} exceeds bound {bound}"
                    ));
                }
                cases += 1;
            }
        }
    }
    Ok(format!("{cases} atom bounds"))
}

fn streams_reproducible_and_distinct() -> CheckResult {
    let mut s1 = derive_stream(7, 3);
    let mut s2 = derive_stream(7, 3);
    for draw in 0..64 {
        if s1.next_u64() != s2.next_u64() {
            return Err(format!("identical streams diverged at draw {draw}"));
        }
    }
    let first = derive_stream(7, 3).next_u64();
    if derive_stream(7, 4).next_u64() == first || derive_stream(8, 3).next_u64() == first {
        return Err("distinct stream addresses repeated output".into());
    }
    Ok("64 draws reproduced; neighbors differ".into())
}

fn simulation_bitwise_repeatable() -> CheckResult {
    let cfg = TestConfig {
        n: 50,
        m: 1,
        alpha: 0.05,
        reps: 2000,
        master_seed: 11,
    };
    let u01 = uniform(0.0, 1.0);
    let a = lib(simulate_statistic(u01, &cfg))?;
    let b = lib(simulate_statistic(u01, &cfg))?;
    if a.iter().zip(&b).any(|(x, y)| x.to_bits() != y.to_bits()) {
        return Err("repeated simulation differed".into());
    }
    let cv1 = lib(critical_values(&cfg))?;
    let cv2 = lib(critical_values(&cfg))?;
    if cv1.g1.to_bits() != cv2.g1.to_bits() || cv1.g2.to_bits() != cv2.g2.to_bits() {
        return Err("repeated critical values differed".into());
    }
    let alt = beta(1.5, 1.5);
    let p1 = lib(power(alt, &cfg, &cv1))?;
    let p2 = lib(power(alt, &cfg, &cv1))?;
    if p1.to_bits() != p2.to_bits() {
        return Err("repeated power estimate differed".into());
    }
    Ok(format!("{} replications repeated bitwise", cfg.reps))
}

fn parallel_matches_sequential() -> CheckResult {
    let cfg = TestConfig {
        n: 50,
        m: 1,
        alpha: 0.05,
        reps: 2000,
        master_seed: 11,
    };
    let u01 = uniform(0.0, 1.0);
    let fanned = lib(simulate_statistic(u01, &cfg))?;
    let serial = lib(simulate_statistic_sequential(u01, &cfg))?;
    if fanned
        .iter()
        .zip(&serial)
        .any(|(x, y)| x.to_bits() != y.to_bits())
    {
        return Err("scheduling changed the output".into());
    }
    if cfg!(feature = "parallel") {
        Ok("parallel run matches sequential bitwise".into())
    } else {
        Ok("parallel feature disabled; sequential engine is self-consistent".into())
    }
}

fn critical_values_ordered_and_negative() -> CheckResult {
    let mut cases = 0;
    for m in [1, 2] {
        for alpha in [0.05, 0.2] {
            let cfg = TestConfig {
                n: 25,
                m,
                alpha,
                reps: 4000,
                master_seed: 5,
            };
            let cv = lib(critical_values(&cfg))?;
            if !(cv.g1 < cv.g2 && cv.g2 < 0.0) {
                return Err(format!(
                    "m={m} alpha={alpha}: ({}, {}) not ordered negative",
                    cv.g1, cv.g2
                ));
            }
            cases += 1;
        }
    }
    Ok(format!("{cases} configurations"))
}

fn interval_nests_across_alpha() -> CheckResult {
    let base = TestConfig {
        n: 30,
        m: 1,
        alpha: 0.10,
        reps: 5000,
        master_seed: 3,
    };
    let wide_alpha = lib(critical_values(&base))?;
    let narrow_alpha = lib(critical_values(&TestConfig {
        alpha: 0.02,
        ..base
    }))?;
    if narrow_alpha.g1 <= wide_alpha.g1
        && wide_alpha.g1 < wide_alpha.g2
        && wide_alpha.g2 <= narrow_alpha.g2
    {
        Ok("alpha = 0.10 interval nests inside alpha = 0.02".into())
    } else {
        Err(format!(
            "intervals [{}, {}] and [{}, {}] are not nested",
            narrow_alpha.g1, narrow_alpha.g2, wide_alpha.g1, wide_alpha.g2
        ))
    }
}

fn interval_narrows_with_sample_size() -> CheckResult {
    let mut rows = Vec::new();
    for n in [20, 30, 40, 50] {
        let cfg = TestConfig {
            n,
            m: 1,
            alpha: 0.05,
            reps: 100_000,
            master_seed: 42,
        };
        rows.push((n, lib(critical_values(&cfg))?));
    }
    for pair in rows.windows(2) {
        let (n_prev, prev) = (&pair[0].0, &pair[0].1);
        let (n_next, next) = (&pair[1].0, &pair[1].1);
        if next.g1 <= prev.g1 {
            return Err(format!("g1 did not rise from n={n_prev} to n={n_next}"));
        }
        if next.g2 >= prev.g2 {
            return Err(format!("g2 did not fall from n={n_prev} to n={n_next}"));
        }
        if next.g2 - next.g1 >= prev.g2 - prev.g1 {
            return Err(format!("interval widened from n={n_prev} to n={n_next}"));
        }
    }
    Ok("g1 rising, g2 falling, width shrinking over n = 20..50".into())
}

fn size_matches_alpha() -> CheckResult {
    let table_cfg = TestConfig {
        n: 40,
        m: 1,
        alpha: 0.05,
        reps: 100_000,
        master_seed: 7,
    };
    let cv = lib(critical_values(&table_cfg))?;
    let power_cfg = TestConfig {
        reps: 20_000,
        master_seed: 8,
        ..table_cfg
    };
    let size = lib(power(beta(1.0, 1.0), &power_cfg, &cv))?;
    let se = (0.05f64 * 0.95 / power_cfg.reps as f64).sqrt();
    if (size - 0.05).abs() > 3.0 * se {
        return Err(format!(
            "size {size:.5} deviates from 0.05 by more than 3 binomial standard errors ({:.5})",
            3.0 * se
        ));
    }
    Ok(format!("size {size:.5} within 3 standard errors of 0.05"))
}

fn simulated_statistics_nonpositive() -> CheckResult {
    for (n, m, seed) in [(20, 1, 21), (35, 2, 22)] {
        let cfg = TestConfig {
            n,
            m,
            alpha: 0.05,
            reps: 2000,
            master_seed: seed,
        };
        let stats = lib(simulate_statistic(uniform(0.0, 1.0), &cfg))?;
        if let Some(bad) = stats.iter().find(|&&s| s > 0.0) {
            return Err(format!("n={n} m={m}: positive statistic {bad}"));
        }
    }
    Ok("4000 simulated statistics are nonpositive".into())
}
