//! The restricted base-`d` expansion of `(d - 1) n + 1` and the minimal-energy
//! tree `T*(n, d)` it describes.
//!
//! `T*(n, d)` is a spine `v_0 .. v_l`. Each `v_k` with `k < l` carries `d - 1`
//! complete `d`-ary branches, `r_k` of them `C_{k+2}` and the rest `C_k`; the
//! top vertex `v_l` carries `d` branches described by the terminal pattern.
//! Counting vertices gives
//!
//! ```text
//! (d - 1) n + 1 = a_0 + a_1 d + ... + a_l d^l
//! a_k = (d - 1)(1 + (d + 1) r_k)                  for k < l
//! a_l = 1 | d | d + (d - 1) q + (d^2 - 1) r        (terminal)
//! ```
//!
//! and the expansion of a given `n` is unique.

use alloc::format;
use alloc::vec::Vec;

use super::TreeBuilder;
use crate::{Error, Result, Tree};

/// Branches hanging from the top spine vertex `v_l`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Terminal {
    /// `d` copies of `C_{l-1}`; leading coefficient 1.
    AllPrevious,
    /// `d` copies of `C_l`; leading coefficient `d`.
    AllCurrent,
    /// `q` copies of `C_{l+1}` (`q >= 2`), `r` copies of `C_{l+2}`, the rest `C_l`.
    Mixed { q: usize, r: usize },
}

impl Terminal {
    pub fn coefficient(self, d: usize) -> usize {
        match self {
            Terminal::AllPrevious => 1,
            Terminal::AllCurrent => d,
            Terminal::Mixed { q, r } => d + (d - 1) * q + (d * d - 1) * r,
        }
    }

    /// Heights of the `d` branches at `v_l`, larger ones first.
    fn branch_heights(self, d: usize, l: usize) -> Vec<usize> {
        match self {
            Terminal::AllPrevious => core::iter::repeat_n(l - 1, d).collect(),
            Terminal::AllCurrent => core::iter::repeat_n(l, d).collect(),
            Terminal::Mixed { q, r } => core::iter::repeat_n(l + 2, r)
                .chain(core::iter::repeat_n(l + 1, q))
                .chain(core::iter::repeat_n(l, d - q - r))
                .collect(),
        }
    }

    /// Every admissible terminal pattern for branching `d`.
    fn all(d: usize) -> impl Iterator<Item = Terminal> {
        let mixed = (2..=d).flat_map(move |q| (0..=d - q).map(move |r| Terminal::Mixed { q, r }));
        [Terminal::AllPrevious, Terminal::AllCurrent].into_iter().chain(mixed)
    }
}

/// Coefficients of the expansion together with the branch multiplicities they
/// encode.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DigitalExpansion {
    pub d: usize,
    pub n: usize,
    /// `a_0 ..= a_l`.
    pub coefficients: Vec<usize>,
    /// `r_0 .. r_{l-1}`: how many of the `d - 1` branches at `v_k` are `C_{k+2}`.
    pub upper: Vec<usize>,
    pub terminal: Terminal,
}

impl DigitalExpansion {
    /// Index `l` of the top spine vertex.
    pub fn top(&self) -> usize {
        self.coefficients.len() - 1
    }

    /// Checks every algebraic constraint, including the weighted digit sum.
    pub fn validate(&self) -> Result<()> {
        let d = self.d;
        let l = self.top();
        let bad = |what: &str| Err(Error::Invariant(format!("expansion of n={} d={d}: {what}", self.n)));
        if self.upper.len() != l {
            return bad("multiplicity count does not match the top index");
        }
        for (k, (&a, &r)) in self.coefficients.iter().zip(&self.upper).enumerate() {
            if r >= d || a != (d - 1) * (1 + (d + 1) * r) {
                return bad(&format!("coefficient a_{k} = {a} with r_{k} = {r}"));
            }
        }
        if let Terminal::Mixed { q, r } = self.terminal {
            if q < 2 || q + r > d {
                return bad("terminal multiplicities out of range");
            }
        }
        if self.terminal == Terminal::AllPrevious && l == 0 {
            return bad("terminal C_(l-1) with l = 0");
        }
        if self.coefficients[l] != self.terminal.coefficient(d) {
            return bad("leading coefficient does not match the terminal pattern");
        }
        let mut sum: u128 = 0;
        for &a in self.coefficients.iter().rev() {
            sum = sum * d as u128 + a as u128;
        }
        if sum != (d as u128 - 1) * self.n as u128 + 1 {
            return bad("weighted digit sum differs from (d-1)n+1");
        }
        Ok(())
    }
}

/// Computes the unique expansion of `(d - 1) n + 1`.
///
/// Digits are peeled from the low end: the residue of the remaining value
/// modulo `d` fixes `r_k` because `r -> -(1 + r) mod d` is a bijection on
/// `0..d`. Before each step the remaining value is also tested as a leading
/// coefficient. The walk continues past the first valid termination so that a
/// second one, which would break uniqueness, is detected and reported.
pub fn digital_expansion(n: usize, d: usize) -> Result<DigitalExpansion> {
    if d < 2 {
        return Err(Error::Parameter(format!("branching d = {d} must be >= 2")));
    }
    if n == 0 {
        return Err(Error::Parameter("vertex count must be >= 1".into()));
    }
    let target = (d as u128 - 1)
        .checked_mul(n as u128)
        .and_then(|v| v.checked_add(1))
        .ok_or_else(|| Error::Parameter(format!("n = {n} too large")))?;

    let mut found: Option<DigitalExpansion> = None;
    let mut remaining = target;
    let mut coefficients: Vec<usize> = Vec::new();
    let mut upper: Vec<usize> = Vec::new();
    let d128 = d as u128;
    loop {
        let level = coefficients.len();
        for terminal in Terminal::all(d) {
            if terminal.coefficient(d) as u128 != remaining {
                continue;
            }
            if terminal == Terminal::AllPrevious && level == 0 {
                // C_{-1} does not exist; only reachable for n = 0.
                continue;
            }
            let mut a = coefficients.clone();
            a.push(remaining as usize);
            let candidate = DigitalExpansion {
                d,
                n,
                coefficients: a,
                upper: upper.clone(),
                terminal,
            };
            if let Some(prev) = &found {
                return Err(Error::Invariant(format!(
                    "expansion of n={n} d={d} is not unique: terminates at l={} and l={}",
                    prev.top(),
                    level
                )));
            }
            found = Some(candidate);
        }
        let r = ((d128 - remaining % d128) + d128 - 1) % d128;
        let digit = (d128 - 1) * (1 + (d128 + 1) * r);
        if digit >= remaining {
            break;
        }
        let rest = remaining - digit;
        if !rest.is_multiple_of(d128) {
            return Err(Error::Invariant(format!(
                "expansion of n={n} d={d}: residue arithmetic failed at level {level}"
            )));
        }
        coefficients.push(digit as usize);
        upper.push(r as usize);
        remaining = rest / d128;
    }
    let expansion = found.ok_or_else(|| {
        Error::Invariant(format!("no valid digital expansion for n={n} d={d}"))
    })?;
    expansion.validate()?;
    Ok(expansion)
}

/// Builds `T*(n, d)`.
///
/// Vertices are numbered spine first (`v_k` is vertex `k`), then the branches
/// depth-first, lower spine vertices before higher ones and, at each spine
/// vertex, taller branches first.
pub fn build_tstar(n: usize, d: usize) -> Result<Tree> {
    let expansion = digital_expansion(n, d)?;
    let tree = tree_from_expansion(&expansion);
    if tree.n() != n || tree.max_degree() > d + 1 {
        return Err(Error::Invariant(format!(
            "T*(n={n}, d={d}) built with {} vertices and max degree {}",
            tree.n(),
            tree.max_degree()
        )));
    }
    Ok(tree)
}

pub(crate) fn tree_from_expansion(e: &DigitalExpansion) -> Tree {
    let d = e.d;
    let l = e.top();
    let mut b = TreeBuilder::new();
    for k in 0..=l {
        let v = b.add_vertex();
        if k > 0 {
            b.add_edge(k - 1, v);
        }
    }
    for (k, &r) in e.upper.iter().enumerate() {
        let heights = core::iter::repeat_n(k + 2, r).chain(core::iter::repeat_n(k, d - 1 - r));
        for h in heights {
            if let Some(root) = b.attach_complete(d, h) {
                b.add_edge(k, root);
            }
        }
    }
    for h in e.terminal.branch_heights(d, l) {
        if let Some(root) = b.attach_complete(d, h) {
            b.add_edge(l, root);
        }
    }
    debug_assert_eq!(b.vertex_count(), e.n);
    b.finish()
}
