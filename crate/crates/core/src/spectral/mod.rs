//! Tree spectra and energy.
//!
//! Two engines compute the same eigenvalues independently: a dense symmetric
//! eigensolver on the adjacency matrix, and exact root isolation of the
//! characteristic polynomial assembled from matching numbers. `Method::Cross`
//! runs both and fails loudly if they disagree.

mod dense;
mod matching;
mod poly;

use alloc::format;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_traits::Zero;

use crate::{Error, Result, Tree};

pub use matching::{matching_polynomial, MatchingPolynomial};
use poly::{isolate_roots, square_free_factors, Dyadic, IntPoly};

/// Tunables for both engines.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EnergyOptions {
    /// Largest tree handed to the dense eigensolver.
    pub dense_cap: usize,
    /// Largest tree handed to exact root isolation.
    pub polynomial_cap: usize,
    /// Per-eigenvalue tolerance of the dense path, relative to `max(1, |lambda|_max)`.
    pub eigen_tolerance: f64,
    /// Absolute tolerance on each eigenvalue from the polynomial path.
    pub root_tolerance: f64,
    /// Dense eigenvalues with smaller magnitude are treated as zero.
    pub zero_clamp: f64,
}

impl Default for EnergyOptions {
    fn default() -> Self {
        Self {
            dense_cap: 8192,
            polynomial_cap: 256,
            eigen_tolerance: 1e-10,
            root_tolerance: 1e-12,
            zero_clamp: 1e-10,
        }
    }
}

/// Root tolerance used when two energies are too close to call.
pub const TIE_ROOT_TOLERANCE: f64 = 1e-20;

/// Sorted real eigenvalues.
#[derive(Debug, Clone, PartialEq)]
pub struct Spectrum {
    values: Vec<f64>,
}

impl Spectrum {
    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// `2 * sum of positive eigenvalues`, ignoring magnitudes below `zero_clamp`.
    pub fn energy(&self, zero_clamp: f64) -> f64 {
        2.0 * self.values.iter().filter(|&&x| x >= zero_clamp).sum::<f64>()
    }

    /// Trace, second moment and symmetry checks valid for any tree.
    pub fn check_tree_invariants(&self) -> Result<()> {
        let n = self.values.len() as f64;
        let sum: f64 = self.values.iter().sum();
        let sq: f64 = self.values.iter().map(|x| x * x).sum();
        if sum.abs() > 1e-8 * n.max(1.0) {
            return Err(Error::Invariant(format!("eigenvalue sum {sum} is not 0 (n={n})")));
        }
        if (sq - 2.0 * (n - 1.0).max(0.0)).abs() > 1e-6 * n.max(1.0) {
            return Err(Error::Invariant(format!(
                "eigenvalue square sum {sq} differs from 2(n-1) (n={n})"
            )));
        }
        let k = self.values.len();
        for i in 0..k / 2 {
            if (self.values[i] + self.values[k - 1 - i]).abs() > 1e-8 {
                return Err(Error::Invariant(format!(
                    "spectrum not symmetric at position {i} (n={n})"
                )));
            }
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Method {
    Dense,
    Polynomial,
    Cross,
}

impl Method {
    pub fn name(self) -> &'static str {
        match self {
            Method::Dense => "dense",
            Method::Polynomial => "polynomial",
            Method::Cross => "cross",
        }
    }

    /// Cross when the tree fits the polynomial cap, otherwise dense.
    pub fn auto(n: usize, opts: &EnergyOptions) -> Self {
        if n <= opts.polynomial_cap {
            Method::Cross
        } else {
            Method::Dense
        }
    }
}

impl core::str::FromStr for Method {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "dense" => Ok(Method::Dense),
            "polynomial" => Ok(Method::Polynomial),
            "cross" => Ok(Method::Cross),
            other => Err(Error::Parameter(format!("unknown energy method {other:?}"))),
        }
    }
}

/// An energy value with the engine that produced it and its absolute
/// uncertainty.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EnergyResult {
    pub value: f64,
    pub method: Method,
    pub error_bound: f64,
}

/// Rigorous lower and upper bounds on an energy.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EnergyEnclosure {
    pub lo: f64,
    pub hi: f64,
}

impl EnergyEnclosure {
    pub fn midpoint(&self) -> f64 {
        0.5 * (self.lo + self.hi)
    }
}

pub fn spectrum_dense(t: &Tree, opts: &EnergyOptions) -> Result<Spectrum> {
    if t.is_empty() {
        return Err(Error::Parameter("spectrum of the empty tree".into()));
    }
    if t.n() > opts.dense_cap {
        return Err(Error::CapExceeded {
            what: "dense eigensolver (raise --dense-cap)",
            size: t.n(),
            cap: opts.dense_cap,
        });
    }
    let spectrum = Spectrum {
        values: dense::adjacency_eigenvalues(t)?,
    };
    spectrum.check_tree_invariants()?;
    Ok(spectrum)
}

/// A positive eigenvalue `sqrt(y)` enclosed in `[lo, hi]`, with multiplicity.
#[derive(Debug, Clone, Copy)]
struct PositiveRoot {
    lo: f64,
    hi: f64,
    multiplicity: usize,
}

/// Positive eigenvalues from the matching numbers, each refined until its
/// enclosure is narrower than `tol`.
///
/// With `nu` the matching number, the characteristic polynomial is
/// `x^(n - 2 nu) Q(x^2)` where `Q(y) = sum_k (-1)^k m_k y^(nu - k)` has `nu`
/// positive roots counted with multiplicity.
fn positive_roots(p: &MatchingPolynomial, tol: f64) -> Result<Vec<PositiveRoot>> {
    let nu = p.matching_number();
    let mut coeffs = alloc::vec![BigInt::zero(); nu + 1];
    for (k, m) in p.counts().iter().enumerate().take(nu + 1) {
        let c = BigInt::from(m.clone());
        coeffs[nu - k] = if k % 2 == 0 { c } else { -c };
    }
    let q = IntPoly::new(coeffs);
    let mut roots = Vec::with_capacity(nu);
    let accept = |lo: f64, width: f64| lo > 0.0 && width <= 2.0 * tol * libm::sqrt(lo);
    for (factor, multiplicity) in square_free_factors(&q) {
        // Tree eigenvalues satisfy lambda^2 <= n - 1; fall back to a coefficient bound.
        let mut bound = power_of_two_at_least(p.n().max(1) as u64);
        let mut brackets = isolate_roots(&factor, bound.clone(), accept);
        if brackets.len() != factor.degree() {
            bound = Dyadic {
                num: BigInt::from(1u8) << (p.counts().iter().map(|m| m.bits()).max().unwrap_or(1) as usize + 1),
                exp: 0,
            };
            brackets = isolate_roots(&factor, bound, accept);
        }
        if brackets.len() != factor.degree() {
            return Err(Error::Invariant(format!(
                "characteristic polynomial (n={}): isolated {} real roots of a degree-{} factor",
                p.n(),
                brackets.len(),
                factor.degree()
            )));
        }
        for b in brackets {
            let (ylo, yhi) = b.bounds();
            // One ulp of slack on each float conversion.
            let lo = libm::sqrt(ylo * (1.0 - f64::EPSILON)).max(0.0);
            let hi = libm::sqrt(yhi * (1.0 + f64::EPSILON));
            roots.push(PositiveRoot { lo, hi, multiplicity });
        }
    }
    let total: usize = roots.iter().map(|r| r.multiplicity).sum();
    if total != nu {
        return Err(Error::Invariant(format!(
            "characteristic polynomial (n={}): {total} positive roots, expected {nu}",
            p.n()
        )));
    }
    Ok(roots)
}

fn power_of_two_at_least(v: u64) -> Dyadic {
    Dyadic::integer(v.next_power_of_two())
}

fn check_polynomial_cap(n: usize, opts: &EnergyOptions) -> Result<()> {
    if n > opts.polynomial_cap {
        return Err(Error::CapExceeded {
            what: "exact polynomial root isolation",
            size: n,
            cap: opts.polynomial_cap,
        });
    }
    Ok(())
}

/// All `n` eigenvalues from the matching numbers, ascending.
pub fn spectrum_from_polynomial(p: &MatchingPolynomial, opts: &EnergyOptions) -> Result<Spectrum> {
    check_polynomial_cap(p.n(), opts)?;
    let roots = positive_roots(p, opts.root_tolerance)?;
    let mut positive = Vec::with_capacity(p.n());
    for r in &roots {
        let mid = 0.5 * (r.lo + r.hi);
        positive.extend(core::iter::repeat_n(mid, r.multiplicity));
    }
    positive.sort_by(f64::total_cmp);
    let zeros = p.n() - 2 * positive.len();
    let mut values: Vec<f64> = positive.iter().rev().map(|x| -x).collect();
    values.extend(core::iter::repeat_n(0.0, zeros));
    values.extend_from_slice(&positive);
    if values.len() != p.n() {
        return Err(Error::Invariant(format!(
            "polynomial spectrum has {} values for n={}",
            values.len(),
            p.n()
        )));
    }
    Ok(Spectrum { values })
}

/// Certified bounds on the energy with every eigenvalue enclosed to `tol`.
pub fn energy_enclosure(p: &MatchingPolynomial, tol: f64) -> Result<EnergyEnclosure> {
    let roots = positive_roots(p, tol)?;
    let mut lo = 0.0;
    let mut hi = 0.0;
    for r in &roots {
        lo += 2.0 * r.multiplicity as f64 * r.lo;
        hi += 2.0 * r.multiplicity as f64 * r.hi;
    }
    // Summation rounding: at most one ulp of the running total per term.
    let slack = (roots.len() + 1) as f64 * f64::EPSILON * hi;
    Ok(EnergyEnclosure {
        lo: (lo - slack).max(0.0),
        hi: hi + slack,
    })
}

fn dense_energy(t: &Tree, opts: &EnergyOptions) -> Result<EnergyResult> {
    let spectrum = spectrum_dense(t, opts)?;
    let top = spectrum.values().last().copied().unwrap_or(0.0).abs().max(1.0);
    Ok(EnergyResult {
        value: spectrum.energy(opts.zero_clamp),
        method: Method::Dense,
        error_bound: t.n() as f64 * opts.eigen_tolerance * top,
    })
}

fn polynomial_energy(t: &Tree, opts: &EnergyOptions) -> Result<EnergyResult> {
    check_polynomial_cap(t.n(), opts)?;
    let p = matching_polynomial(t)?;
    let e = energy_enclosure(&p, opts.root_tolerance)?;
    Ok(EnergyResult {
        value: e.midpoint(),
        method: Method::Polynomial,
        error_bound: 0.5 * (e.hi - e.lo),
    })
}

/// Energy `sum |lambda_i|` of `t`, computed as twice the sum of the positive
/// eigenvalues.
pub fn energy(t: &Tree, method: Method, opts: &EnergyOptions) -> Result<EnergyResult> {
    if t.is_empty() {
        return Ok(EnergyResult {
            value: 0.0,
            method,
            error_bound: 0.0,
        });
    }
    match method {
        Method::Dense => dense_energy(t, opts),
        Method::Polynomial => polynomial_energy(t, opts),
        Method::Cross => {
            let d = dense_energy(t, opts)?;
            let p = polynomial_energy(t, opts)?;
            let bound = d.error_bound + p.error_bound;
            if (d.value - p.value).abs() > bound {
                return Err(Error::Invariant(format!(
                    "energy engines disagree on a tree with n={}: dense {} vs polynomial {}",
                    t.n(),
                    d.value,
                    p.value
                )));
            }
            Ok(EnergyResult {
                value: p.value,
                method: Method::Cross,
                error_bound: bound,
            })
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tree::{build_tstar, complete_dary};

    const OPTS: EnergyOptions = EnergyOptions {
        dense_cap: 8192,
        polynomial_cap: 256,
        eigen_tolerance: 1e-10,
        root_tolerance: 1e-12,
        zero_clamp: 1e-10,
    };

    #[test]
    fn closed_form_energies_both_engines() {
        let cases = [
            (Tree::path(2), 2.0),
            (Tree::path(3), 2.0 * libm::sqrt(2.0)),
            (Tree::star(4), 2.0 * libm::sqrt(3.0)),
            (Tree::path(4), 2.0 * libm::sqrt(5.0)),
        ];
        for (t, e) in &cases {
            for m in [Method::Dense, Method::Polynomial, Method::Cross] {
                let r = energy(t, m, &OPTS).unwrap();
                assert!((r.value - e).abs() < 1e-9, "{m:?} {} vs {e}", r.value);
            }
        }
    }

    #[test]
    fn polynomial_spectrum_of_small_trees() {
        let p = matching_polynomial(&Tree::path(4)).unwrap();
        let s = spectrum_from_polynomial(&p, &OPTS).unwrap();
        let a = libm::sqrt((3.0 + libm::sqrt(5.0)) / 2.0);
        let b = libm::sqrt((3.0 - libm::sqrt(5.0)) / 2.0);
        for (x, y) in s.values().iter().zip([-a, -b, b, a]) {
            assert!((x - y).abs() < 1e-12);
        }
        let p = matching_polynomial(&Tree::star(4)).unwrap();
        let s = spectrum_from_polynomial(&p, &OPTS).unwrap();
        let r3 = libm::sqrt(3.0);
        for (x, y) in s.values().iter().zip([-r3, 0.0, 0.0, r3]) {
            assert!((x - y).abs() < 1e-12);
        }
    }

    #[test]
    fn engines_agree_on_repeated_eigenvalues() {
        // Complete trees have eigenvalues of high multiplicity.
        for t in [
            complete_dary(2, 5).unwrap().tree,
            complete_dary(3, 4).unwrap().tree,
            build_tstar(94, 2).unwrap(),
            build_tstar(60, 3).unwrap(),
        ] {
            let d = spectrum_dense(&t, &OPTS).unwrap();
            let p = spectrum_from_polynomial(&matching_polynomial(&t).unwrap(), &OPTS).unwrap();
            for (x, y) in d.values().iter().zip(p.values()) {
                assert!((x - y).abs() < 1e-8, "n={}: {x} vs {y}", t.n());
            }
            energy(&t, Method::Cross, &OPTS).unwrap();
        }
    }

    #[test]
    fn caps_are_enforced() {
        let opts = EnergyOptions {
            dense_cap: 10,
            polynomial_cap: 5,
            ..OPTS
        };
        let t = Tree::path(11);
        assert!(matches!(energy(&t, Method::Dense, &opts), Err(Error::CapExceeded { .. })));
        assert!(matches!(energy(&Tree::path(6), Method::Polynomial, &opts), Err(Error::CapExceeded { .. })));
    }

    #[test]
    fn enclosure_is_tight_at_tie_tolerance() {
        let p = matching_polynomial(&Tree::path(4)).unwrap();
        let e = energy_enclosure(&p, TIE_ROOT_TOLERANCE).unwrap();
        let exact = 2.0 * libm::sqrt(5.0);
        assert!(e.lo <= exact && exact <= e.hi);
        assert!(e.hi - e.lo < 1e-14);
    }

    #[test]
    fn single_vertex_and_empty() {
        let r = energy(&Tree::single_vertex(), Method::Cross, &OPTS).unwrap();
        assert_eq!(r.value, 0.0);
        assert_eq!(energy(&Tree::empty(), Method::Dense, &OPTS).unwrap().value, 0.0);
    }
}
