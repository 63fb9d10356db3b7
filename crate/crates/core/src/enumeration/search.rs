use alloc::format;
use alloc::vec::Vec;

use super::{enumerate_trees, EnumSpec};
use crate::spectral::{energy, energy_enclosure, matching_polynomial, EnergyOptions, Method, TIE_ROOT_TOLERANCE};
use crate::tree::{build_tstar, canonical_code};
use crate::{CanonicalCode, Error, Result, Tree};

/// Candidates within this energy distance of the best are re-resolved with
/// tightened root tolerance.
pub const NEAR_TIE: f64 = 1e-7;

/// Outcome of an exhaustive minimum-energy scan over trees on `n` vertices
/// with maximum degree at most `d + 1`.
#[derive(Debug, Clone, PartialEq)]
pub struct MinEnergyReport {
    pub n: usize,
    pub d: usize,
    pub tree_count: usize,
    pub min_energy: f64,
    pub argmin_code: CanonicalCode,
    /// False when another tree could not be separated from the minimizer.
    pub argmin_unique: bool,
    /// Whether the minimizer is `T*(n, d)`; undefined for `d < 2`.
    pub tstar_match: Option<bool>,
    /// Energy gap to the second-best tree; `None` when there is only one tree.
    pub runner_up_gap: Option<f64>,
    /// Trees indistinguishable from the minimizer (empty when unique).
    pub tied: Vec<CanonicalCode>,
}

/// Scans every tree in the class, scoring with the cross-checked engines.
pub fn min_energy_search(n: usize, d: usize, opts: &EnergyOptions) -> Result<MinEnergyReport> {
    let spec = EnumSpec::new(n, d + 1)?;
    let scored = enumerate_trees(spec)?
        .map(|t| {
            let e = energy(&t, Method::Cross, opts)?.value;
            Ok((t, e))
        })
        .collect::<Result<Vec<_>>>()?;
    resolve_minimum(n, d, scored)
}

/// Picks the minimizer from pre-scored trees.
///
/// Energies within [`NEAR_TIE`] of the best are recomputed as certified
/// enclosures at [`TIE_ROOT_TOLERANCE`]. Trees with identical matching
/// numbers are isospectral and therefore exact ties; overlapping enclosures
/// are unresolved ties. Either makes `argmin_unique` false.
pub fn resolve_minimum(n: usize, d: usize, mut scored: Vec<(Tree, f64)>) -> Result<MinEnergyReport> {
    if scored.is_empty() {
        return Err(Error::Parameter(format!("no trees with n={n} and max degree {}", d + 1)));
    }
    let tree_count = scored.len();
    scored.sort_by(|a, b| a.1.total_cmp(&b.1));
    let best = scored[0].1;
    let close = scored.iter().take_while(|(_, e)| *e - best <= NEAR_TIE).count();

    let (winner, min_energy, runner_up_gap, tied) = if close == 1 {
        let gap = scored.get(1).map(|(_, e)| e - best);
        (0, best, gap, Vec::new())
    } else {
        let mut refined = Vec::with_capacity(close);
        for (i, (t, _)) in scored.iter().take(close).enumerate() {
            let p = matching_polynomial(t)?;
            let enclosure = energy_enclosure(&p, TIE_ROOT_TOLERANCE)?;
            refined.push((i, p, enclosure));
        }
        refined.sort_by(|a, b| a.2.midpoint().total_cmp(&b.2.midpoint()));
        let (w, wp, we) = &refined[0];
        let mut tied = Vec::new();
        for (i, p, e) in &refined[1..] {
            if p == wp || e.lo <= we.hi {
                tied.push(canonical_code(&scored[*i].0)?);
            }
        }
        let runner_up = refined[1].2.midpoint();
        let gap = if close < scored.len() {
            runner_up.min(scored[close].1) - we.midpoint()
        } else {
            runner_up - we.midpoint()
        };
        (*w, we.midpoint(), Some(gap.max(0.0)), tied)
    };

    let argmin = &scored[winner].0;
    let argmin_code = canonical_code(argmin)?;
    let tstar_match = if d >= 2 {
        Some(canonical_code(&build_tstar(n, d)?)? == argmin_code)
    } else {
        None
    };
    Ok(MinEnergyReport {
        n,
        d,
        tree_count,
        min_energy,
        argmin_code,
        argmin_unique: tied.is_empty(),
        tstar_match,
        runner_up_gap,
        tied,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn star_wins_on_four_vertices() {
        let r = min_energy_search(4, 2, &EnergyOptions::default()).unwrap();
        assert_eq!(r.tree_count, 2);
        assert_eq!(r.argmin_code, canonical_code(&Tree::star(4)).unwrap());
        assert!((r.min_energy - 2.0 * libm::sqrt(3.0)).abs() < 1e-12);
        assert_eq!(r.tstar_match, Some(true));
        assert!(r.argmin_unique);
        let gap = r.runner_up_gap.unwrap();
        assert!((gap - (2.0 * libm::sqrt(5.0) - 2.0 * libm::sqrt(3.0))).abs() < 1e-9);
    }

    #[test]
    fn single_tree_class() {
        let r = min_energy_search(2, 2, &EnergyOptions::default()).unwrap();
        assert_eq!((r.tree_count, r.min_energy, r.runner_up_gap), (1, 2.0, None));
        assert!(r.argmin_unique);
    }

    #[test]
    fn paths_only_for_d1() {
        let r = min_energy_search(4, 1, &EnergyOptions::default()).unwrap();
        assert_eq!(r.tree_count, 1);
        assert_eq!(r.argmin_code, canonical_code(&Tree::path(4)).unwrap());
        assert_eq!(r.tstar_match, None);
    }

    #[test]
    fn isospectral_trees_are_reported_as_ties() {
        // Two copies of the same tree have identical matching numbers.
        let t = Tree::star(5);
        let u = Tree::path(5);
        let scored = alloc::vec![(t.clone(), 4.0), (t, 4.0), (u, 5.0)];
        let r = resolve_minimum(5, 3, scored).unwrap();
        assert!(!r.argmin_unique);
        assert_eq!(r.tied.len(), 1);
    }

    #[test]
    fn apex_tree_minimizes_ten_vertices() {
        let r = min_energy_search(10, 2, &EnergyOptions::default()).unwrap();
        assert_eq!(r.tstar_match, Some(true));
        assert!(r.argmin_unique);
    }
}
