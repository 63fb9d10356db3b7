use alloc::collections::BTreeSet;
use alloc::vec;
use alloc::vec::Vec;

use crate::tree::canonical_code;
use crate::{CanonicalCode, Error, Result, Tree};

/// Largest `n` for [`prufer_oracle`]; `9^7` labeled trees is already ~4.8M.
pub const PRUFER_MAX_N: usize = 9;

/// The labeled tree on `seq.len() + 2` vertices encoded by a Prüfer sequence.
pub fn prufer_decode(seq: &[usize]) -> Result<Tree> {
    let n = seq.len() + 2;
    if let Some(&bad) = seq.iter().find(|&&v| v >= n) {
        return Err(Error::Parameter(alloc::format!(
            "Prüfer entry {bad} outside 0..{n}"
        )));
    }
    let mut degree = vec![1usize; n];
    for &v in seq {
        degree[v] += 1;
    }
    let mut edges = Vec::with_capacity(n - 1);
    for &v in seq {
        let leaf = (0..n).find(|&u| degree[u] == 1).expect("a leaf always exists");
        edges.push((leaf, v));
        degree[leaf] -= 1;
        degree[v] -= 1;
    }
    let rest: Vec<usize> = (0..n).filter(|&u| degree[u] == 1).collect();
    edges.push((rest[0], rest[1]));
    Tree::from_edges(n, &edges)
}

/// Canonical codes of all free trees on `n` vertices, found by decoding every
/// Prüfer sequence and deduplicating.
pub fn prufer_oracle(n: usize) -> Result<BTreeSet<CanonicalCode>> {
    if n == 0 {
        return Err(Error::Parameter("vertex count must be >= 1".into()));
    }
    if n > PRUFER_MAX_N {
        return Err(Error::CapExceeded {
            what: "Prüfer oracle",
            size: n,
            cap: PRUFER_MAX_N,
        });
    }
    let mut out = BTreeSet::new();
    if n == 1 {
        out.insert(canonical_code(&Tree::single_vertex())?);
        return Ok(out);
    }
    let len = n - 2;
    let mut seq = vec![0usize; len];
    loop {
        out.insert(canonical_code(&prufer_decode(&seq)?)?);
        // Odometer increment over [0, n)^len.
        let mut i = 0;
        loop {
            if i == len {
                return Ok(out);
            }
            seq[i] += 1;
            if seq[i] < n {
                break;
            }
            seq[i] = 0;
            i += 1;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_class_counts() {
        assert_eq!(prufer_oracle(1).unwrap().len(), 1);
        assert_eq!(prufer_oracle(2).unwrap().len(), 1);
        assert_eq!(prufer_oracle(3).unwrap().len(), 1);
        assert_eq!(prufer_oracle(4).unwrap().len(), 2);
        assert_eq!(prufer_oracle(6).unwrap().len(), 6);
    }

    #[test]
    fn decode_star_and_path() {
        let star = prufer_decode(&[0, 0, 0]).unwrap();
        assert_eq!(star.degree(0), 4);
        let path = prufer_decode(&[1, 2]).unwrap();
        assert_eq!(path.max_degree(), 2);
        assert!(prufer_decode(&[7]).is_err());
    }

    #[test]
    fn cap() {
        assert!(matches!(prufer_oracle(10), Err(Error::CapExceeded { .. })));
    }
}
