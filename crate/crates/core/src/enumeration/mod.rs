//! Exhaustive generation of free trees with bounded maximum degree.
//!
//! Each free tree is produced once, rooted at its centroid. A tree with a
//! single centroid is a root whose branches all have fewer than `n / 2`
//! vertices; a tree with two centroids is two rooted halves of exactly
//! `n / 2` vertices joined by an edge. Both cases are generated from a
//! catalog of rooted trees taken as non-increasing multisets, so no two
//! outputs are isomorphic and no isomorphism check is needed.

mod prufer;
mod rooted;
mod search;

use alloc::format;
use alloc::vec::Vec;

use crate::tree::TreeBuilder;
use crate::{Error, Result, Tree};

pub use prufer::{prufer_decode, prufer_oracle, PRUFER_MAX_N};
pub use search::{min_energy_search, resolve_minimum, MinEnergyReport, NEAR_TIE};
use rooted::{Catalog, Multisets};

/// Largest vertex count accepted by [`enumerate_trees`].
pub const ENUMERATION_MAX_N: usize = 20;

/// Trees on `n` vertices with maximum degree at most `max_degree`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct EnumSpec {
    pub n: usize,
    pub max_degree: usize,
}

impl EnumSpec {
    pub fn new(n: usize, max_degree: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::Parameter("vertex count must be >= 1".into()));
        }
        if n >= 2 && max_degree == 0 {
            return Err(Error::Parameter(format!("no tree on {n} vertices has max degree 0")));
        }
        if n >= 3 && max_degree < 2 {
            return Err(Error::Parameter(format!(
                "trees on {n} vertices need max degree >= 2, got {max_degree}"
            )));
        }
        if n > ENUMERATION_MAX_N {
            return Err(Error::CapExceeded {
                what: "tree enumeration",
                size: n,
                cap: ENUMERATION_MAX_N,
            });
        }
        Ok(Self { n, max_degree })
    }
}

/// Streams one representative per isomorphism class.
pub fn enumerate_trees(spec: EnumSpec) -> Result<FreeTrees> {
    let spec = EnumSpec::new(spec.n, spec.max_degree)?;
    Ok(FreeTrees::new(spec))
}

/// Iterator returned by [`enumerate_trees`].
pub struct FreeTrees {
    n: usize,
    catalog: Catalog,
    centroid: Vec<Vec<usize>>,
    next_centroid: usize,
    pairs: core::ops::Range<usize>,
    pair: Option<(usize, usize)>,
}

impl FreeTrees {
    fn new(spec: EnumSpec) -> Self {
        let n = spec.n;
        let max_children = spec.max_degree.saturating_sub(1);
        let catalog = Catalog::new(n / 2, max_children);
        // Root multisets are few (tens of thousands at n = 20); materialize them.
        let centroid: Vec<Vec<usize>> =
            Multisets::new(&catalog, n - 1, spec.max_degree, (n - 1) / 2).collect();
        let pairs = if n.is_multiple_of(2) {
            catalog.ids_of_size(n / 2)
        } else {
            0..0
        };
        let pair = (!pairs.is_empty()).then_some((pairs.start, pairs.start));
        Self {
            n,
            catalog,
            centroid,
            next_centroid: 0,
            pairs,
            pair,
        }
    }

    fn build_centroid(&self, kids: &[usize]) -> Tree {
        let mut b = TreeBuilder::new();
        let root = b.add_vertex();
        for &id in kids {
            let child = self.catalog.attach(&mut b, id);
            b.add_edge(root, child);
        }
        debug_assert_eq!(b.vertex_count(), self.n);
        b.finish()
    }

    fn build_pair(&self, a: usize, c: usize) -> Tree {
        let mut b = TreeBuilder::new();
        let x = self.catalog.attach(&mut b, a);
        let y = self.catalog.attach(&mut b, c);
        b.add_edge(x, y);
        b.finish()
    }
}

impl Iterator for FreeTrees {
    type Item = Tree;

    fn next(&mut self) -> Option<Tree> {
        if let Some(kids) = self.centroid.get(self.next_centroid) {
            self.next_centroid += 1;
            return Some(self.build_centroid(kids));
        }
        let (a, c) = self.pair?;
        // Unordered pairs with c <= a.
        self.pair = if c < a {
            Some((a, c + 1))
        } else if a + 1 < self.pairs.end {
            Some((a + 1, self.pairs.start))
        } else {
            None
        };
        Some(self.build_pair(a, c))
    }
}
