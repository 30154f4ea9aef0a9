//! Conditional weighted cumulative past measures over finite partitions.
//!
//! A partition of the support into intervals generates a finite sigma-field;
//! conditioning on it replaces the cdf by the per-atom conditional cdf
//!
//! ```text
//! F(x | atom) = clamp((F(x) - F(atom.lo)) / P(atom), 0, 1)
//! ```
//!
//! which is 0 below the atom and 1 above it. The conditional measure of an
//! atom still integrates over the full support, so the plateau above the
//! atom contributes `-1/2 * int_{atom.hi}^{hi} x^m dx`.

use crate::distributions::BoundedDistribution;
use crate::error::{Error, Result};
use crate::measures::{integrate, left_open_integral, QuadratureConfig};

const MIN_ATOM_PROB: f64 = 1e-12;

/// Disjoint interval atoms covering a distribution's support, each with
/// positive probability. Probabilities sum to 1 by construction.
#[derive(Debug, Clone, PartialEq)]
pub struct Partition {
    atoms: Vec<(f64, f64)>,
    probs: Vec<f64>,
}

impl Partition {
    pub fn atoms(&self) -> &[(f64, f64)] {
        &self.atoms
    }

    pub fn probs(&self) -> &[f64] {
        &self.probs
    }

    pub fn atom_count(&self) -> usize {
        self.atoms.len()
    }

    /// True for the single-atom partition, whose sigma-field is trivial.
    pub fn is_trivial(&self) -> bool {
        self.atoms.len() == 1
    }
}

/// Cut the support at strictly increasing interior breakpoints. Atom
/// probabilities are cdf differences; an atom with probability below 1e-12
/// is rejected, since conditioning on a null event is undefined.
pub fn partition_from_breakpoints(dist: BoundedDistribution, breaks: &[f64]) -> Result<Partition> {
    let (lo, hi) = dist.support();
    for &b in breaks {
        if !(lo < b && b < hi) {
            return Err(Error::InvalidParameter(format!(
                "breakpoint {b} outside the support interior ({lo}, {hi})"
            )));
        }
    }
    for pair in breaks.windows(2) {
        if pair[0] >= pair[1] {
            return Err(Error::InvalidParameter(format!(
                "breakpoints must be strictly increasing, got {} then {}",
                pair[0], pair[1]
            )));
        }
    }
    let mut edges = Vec::with_capacity(breaks.len() + 2);
    edges.push(lo);
    edges.extend_from_slice(breaks);
    edges.push(hi);
    let mut atoms = Vec::new();
    let mut probs = Vec::new();
    for pair in edges.windows(2) {
        let p = dist.cdf(pair[1]) - dist.cdf(pair[0]);
        if p < MIN_ATOM_PROB {
            return Err(Error::InvalidParameter(format!(
                "atom [{}, {}] has probability {p:.3e}, below the minimum",
                pair[0], pair[1]
            )));
        }
        atoms.push((pair[0], pair[1]));
        probs.push(p);
    }
    Ok(Partition { atoms, probs })
}

fn atom(part: &Partition, atom_index: usize) -> Result<((f64, f64), f64)> {
    match (part.atoms.get(atom_index), part.probs.get(atom_index)) {
        (Some(&a), Some(&p)) => Ok((a, p)),
        _ => Err(Error::Domain(format!(
            "atom index {atom_index} out of range for {} atoms",
            part.atom_count()
        ))),
    }
}

/// Conditional cdf given that the variable falls in the indexed atom.
pub fn conditional_cdf(
    dist: BoundedDistribution,
    part: &Partition,
    atom_index: usize,
    x: f64,
) -> Result<f64> {
    let ((alo, _), p) = atom(part, atom_index)?;
    Ok(((dist.cdf(x) - dist.cdf(alo)) / p).clamp(0.0, 1.0))
}

/// Conditional measure of one atom: `-1/2 * int x^m F(x | atom)^2 dx` over
/// the full support, split at the atom's upper edge where the conditional
/// cdf plateaus at 1.
pub fn conditional_wcpj(
    dist: BoundedDistribution,
    part: &Partition,
    atom_index: usize,
    m: u32,
    cfg: &QuadratureConfig,
) -> Result<f64> {
    let ((alo, ahi), p) = atom(part, atom_index)?;
    let (_, hi) = dist.support();
    let w = m as i32;
    let base = dist.cdf(alo);
    let ramp = integrate(
        |x| x.powi(w) * (((dist.cdf(x) - base) / p).clamp(0.0, 1.0)).powi(2),
        alo,
        ahi,
        cfg,
    )?;
    let plateau = (hi.powi(w + 1) - ahi.powi(w + 1)) / (w as f64 + 1.0);
    Ok(-0.5 * (ramp + plateau))
}

/// Partition-weighted average of the per-atom conditional measures. Never
/// exceeds the unconditional measure, with equality exactly for the trivial
/// partition.
pub fn expected_conditional_wcpj(
    dist: BoundedDistribution,
    part: &Partition,
    m: u32,
    cfg: &QuadratureConfig,
) -> Result<f64> {
    let mut total = 0.0;
    for j in 0..part.atom_count() {
        total += part.probs[j] * conditional_wcpj(dist, part, j, m, cfg)?;
    }
    Ok(total)
}

/// Per-atom analogue of the extropy upper bound: with the truncated density
/// `f/p` on the atom, the conditional measure is at most
/// `-1/2 * exp(E[log(X^m F(X|atom)^2) | atom]) * exp(2 * J(X | atom))`.
pub fn conditional_wcpj_extropy_bound(
    dist: BoundedDistribution,
    part: &Partition,
    atom_index: usize,
    m: u32,
    cfg: &QuadratureConfig,
) -> Result<f64> {
    let ((alo, ahi), p) = atom(part, atom_index)?;
    let base = dist.cdf(alo);
    let conditional_extropy = -0.5 * integrate(|x| (dist.pdf(x) / p).powi(2), alo, ahi, cfg)?;
    let log_expectation = left_open_integral(
        |t| {
            let cond = ((dist.cdf(t) - base) / p).clamp(0.0, 1.0);
            (m as f64 * t.ln() + 2.0 * cond.ln()) * dist.pdf(t) / p
        },
        alo,
        ahi,
        cfg,
    )?;
    Ok(-0.5 * log_expectation.exp() * (2.0 * conditional_extropy).exp())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::measures::wcpj;

    fn cfg() -> QuadratureConfig {
        QuadratureConfig::default()
    }

    fn u01() -> BoundedDistribution {
        BoundedDistribution::uniform(0.0, 1.0).unwrap()
    }

    fn close(a: f64, b: f64, tol: f64) -> bool {
        (a - b).abs() < tol
    }

    #[test]
    fn breakpoints_build_atoms_with_exact_probabilities() {
        let part = partition_from_breakpoints(u01(), &[0.5]).unwrap();
        assert_eq!(part.atoms(), &[(0.0, 0.5), (0.5, 1.0)]);
        assert_eq!(part.probs(), &[0.5, 0.5]);

        let pl2 = BoundedDistribution::power_law(2.0).unwrap();
        let part = partition_from_breakpoints(pl2, &[0.5]).unwrap();
        assert!(close(part.probs()[0], 0.25, 1e-12));
        assert!(close(part.probs()[1], 0.75, 1e-12));

        let trivial = partition_from_breakpoints(u01(), &[]).unwrap();
        assert!(trivial.is_trivial());
        assert_eq!(trivial.probs(), &[1.0]);
    }

    #[test]
    fn breakpoints_are_validated() {
        assert!(partition_from_breakpoints(u01(), &[0.5, 0.5]).is_err());
        assert!(partition_from_breakpoints(u01(), &[0.7, 0.3]).is_err());
        assert!(partition_from_breakpoints(u01(), &[1.5]).is_err());
        assert!(partition_from_breakpoints(u01(), &[0.0]).is_err());
        // second atom has probability ~1e-16
        assert!(partition_from_breakpoints(u01(), &[0.5, 0.5 + 1e-16]).is_err());
    }

    #[test]
    fn conditional_cdf_spot_values() {
        let part = partition_from_breakpoints(u01(), &[0.5]).unwrap();
        assert_eq!(conditional_cdf(u01(), &part, 0, 0.25).unwrap(), 0.5);
        assert_eq!(conditional_cdf(u01(), &part, 0, 0.75).unwrap(), 1.0);
        assert_eq!(conditional_cdf(u01(), &part, 1, 0.25).unwrap(), 0.0);
        assert!(conditional_cdf(u01(), &part, 2, 0.25).is_err());
    }

    #[test]
    fn worked_half_split_case() {
        let part = partition_from_breakpoints(u01(), &[0.5]).unwrap();
        let lower = conditional_wcpj(u01(), &part, 0, 1, &cfg()).unwrap();
        assert!(close(lower, -0.21875, 1e-9));
        let upper = conditional_wcpj(u01(), &part, 1, 1, &cfg()).unwrap();
        assert!(close(upper, -7.0 / 96.0, 1e-9));
        let expected = expected_conditional_wcpj(u01(), &part, 1, &cfg()).unwrap();
        assert!(close(expected, -7.0 / 48.0, 1e-9));
        assert!(expected <= wcpj(u01(), 1, &cfg()).unwrap());
    }

    #[test]
    fn trivial_partition_recovers_the_unconditional_measure() {
        for dist in [u01(), BoundedDistribution::power_law(2.0).unwrap()] {
            let part = partition_from_breakpoints(dist, &[]).unwrap();
            for m in 0..=1 {
                let cond = conditional_wcpj(dist, &part, 0, m, &cfg()).unwrap();
                let plain = wcpj(dist, m, &cfg()).unwrap();
                assert!(close(cond, plain, 1e-10), "{dist} m={m}");
                let exp = expected_conditional_wcpj(dist, &part, m, &cfg()).unwrap();
                assert!(close(exp, plain, 1e-10));
            }
        }
    }

    #[test]
    fn finer_partition_lowers_the_expected_measure() {
        let coarse = partition_from_breakpoints(u01(), &[0.5]).unwrap();
        let fine = partition_from_breakpoints(u01(), &[0.25, 0.5, 0.75]).unwrap();
        let plain = wcpj(u01(), 0, &cfg()).unwrap();
        let ec = expected_conditional_wcpj(u01(), &coarse, 0, &cfg()).unwrap();
        let ef = expected_conditional_wcpj(u01(), &fine, 0, &cfg()).unwrap();
        assert!(ef <= ec && ec <= plain);
        assert!(ef <= -1.0 / 6.0);
    }

    #[test]
    fn per_atom_extropy_bound_holds() {
        let part = partition_from_breakpoints(u01(), &[0.5]).unwrap();
        for j in 0..part.atom_count() {
            for m in 0..=1 {
                let value = conditional_wcpj(u01(), &part, j, m, &cfg()).unwrap();
                let bound = conditional_wcpj_extropy_bound(u01(), &part, j, m, &cfg()).unwrap();
                assert!(value <= bound + 1e-9, "atom {j} m={m}: {value} vs {bound}");
            }
        }
    }
}
