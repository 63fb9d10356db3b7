use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigUint;
use num_traits::{One, Zero};

use crate::{Error, Result, Tree};

/// Matching numbers `m(T, k)` for `k = 0 ..= n / 2`.
///
/// For a forest the characteristic polynomial of the adjacency matrix is
/// `sum_k (-1)^k m(T, k) x^(n - 2k)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct MatchingPolynomial {
    n: usize,
    counts: Vec<BigUint>,
}

impl MatchingPolynomial {
    pub fn from_counts(n: usize, mut counts: Vec<BigUint>) -> Result<Self> {
        if counts.len() > n / 2 + 1 {
            if counts[n / 2 + 1..].iter().any(|c| !c.is_zero()) {
                return Err(Error::Parameter("matching count beyond n/2".into()));
            }
            counts.truncate(n / 2 + 1);
        }
        counts.resize(n / 2 + 1, BigUint::zero());
        if !counts[0].is_one() {
            return Err(Error::Parameter("m(T, 0) must be 1".into()));
        }
        Ok(Self { n, counts })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// `m(T, 0) ..= m(T, n/2)`, zero-padded.
    pub fn counts(&self) -> &[BigUint] {
        &self.counts
    }

    pub fn count(&self, k: usize) -> BigUint {
        self.counts.get(k).cloned().unwrap_or_default()
    }

    /// Size of a maximum matching.
    pub fn matching_number(&self) -> usize {
        self.counts.iter().rposition(|c| !c.is_zero()).unwrap_or(0)
    }
}

/// Exact matching numbers by a post-order dynamic program.
///
/// For every vertex two count vectors are kept: matchings of its subtree that
/// leave it free, and those that cover it. Children are folded in one at a
/// time with polynomial products.
pub fn matching_polynomial(t: &Tree) -> Result<MatchingPolynomial> {
    let n = t.n();
    if n == 0 {
        return Err(Error::Parameter("matching polynomial of the empty tree".into()));
    }
    let (order, parent) = t.bfs_from(0);
    let mut free: Vec<Vec<BigUint>> = vec![Vec::new(); n];
    let mut covered: Vec<Vec<BigUint>> = vec![Vec::new(); n];
    for &v in order.iter().rev() {
        let mut f = vec![BigUint::one()];
        let mut c: Vec<BigUint> = Vec::new();
        for &w in t.neighbors(v) {
            if w == parent[v] {
                continue;
            }
            let wf = core::mem::take(&mut free[w]);
            let wc = core::mem::take(&mut covered[w]);
            let total = add(&wf, &wc);
            // Matching v to w: w must be free below, and the edge adds one.
            let mut c_next = mul(&c, &total);
            let edge = shift(&mul(&f, &wf));
            c_next = add(&c_next, &edge);
            f = mul(&f, &total);
            c = c_next;
        }
        free[v] = f;
        covered[v] = c;
    }
    let counts = add(&free[0], &covered[0]);
    MatchingPolynomial::from_counts(n, trim(counts))
}

fn add(a: &[BigUint], b: &[BigUint]) -> Vec<BigUint> {
    let (long, short) = if a.len() >= b.len() { (a, b) } else { (b, a) };
    let mut out = long.to_vec();
    for (o, s) in out.iter_mut().zip(short) {
        *o += s;
    }
    out
}

fn mul(a: &[BigUint], b: &[BigUint]) -> Vec<BigUint> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![BigUint::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

fn shift(a: &[BigUint]) -> Vec<BigUint> {
    if a.is_empty() {
        return Vec::new();
    }
    let mut out = Vec::with_capacity(a.len() + 1);
    out.push(BigUint::zero());
    out.extend_from_slice(a);
    out
}

fn trim(mut v: Vec<BigUint>) -> Vec<BigUint> {
    while v.len() > 1 && v.last().is_some_and(Zero::is_zero) {
        v.pop();
    }
    v
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tree::complete_dary;

    fn counts(t: &Tree) -> Vec<u64> {
        matching_polynomial(t)
            .unwrap()
            .counts()
            .iter()
            .map(|c| u64::try_from(c).unwrap())
            .collect()
    }

    /// Counts k-matchings by testing every edge subset.
    fn brute_force(t: &Tree) -> Vec<u64> {
        let edges = t.edges();
        let mut out = vec![0u64; t.n() / 2 + 1];
        for mask in 0u32..(1 << edges.len()) {
            let mut used = vec![false; t.n()];
            let mut ok = true;
            for (i, &(u, v)) in edges.iter().enumerate() {
                if mask >> i & 1 == 1 {
                    if used[u] || used[v] {
                        ok = false;
                        break;
                    }
                    used[u] = true;
                    used[v] = true;
                }
            }
            if ok {
                out[mask.count_ones() as usize] += 1;
            }
        }
        out
    }

    #[test]
    fn path_and_star() {
        assert_eq!(counts(&Tree::path(4)), vec![1, 3, 1]);
        assert_eq!(counts(&Tree::star(4)), vec![1, 3, 0]);
        assert_eq!(counts(&Tree::single_vertex()), vec![1]);
        assert_eq!(counts(&Tree::path(2)), vec![1, 1]);
    }

    #[test]
    fn complete_binary_height_three() {
        let c3 = complete_dary(2, 3).unwrap().tree;
        let got = counts(&c3);
        assert_eq!(got[1], 6);
        assert_eq!(got, brute_force(&c3));
    }

    #[test]
    fn matching_number_of_star() {
        let p = matching_polynomial(&Tree::star(6)).unwrap();
        assert_eq!(p.matching_number(), 1);
        assert_eq!(p.count(7), BigUint::zero());
    }

    #[test]
    fn rejects_empty_and_bad_counts() {
        assert!(matching_polynomial(&Tree::empty()).is_err());
        assert!(MatchingPolynomial::from_counts(4, vec![BigUint::from(2u8)]).is_err());
        assert!(MatchingPolynomial::from_counts(
            2,
            vec![BigUint::one(), BigUint::one(), BigUint::one()]
        )
        .is_err());
    }
}
