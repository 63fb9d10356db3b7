//! Trees, their constructors and isomorphism codes.

mod build;
mod canon;
mod expansion;

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use crate::{Error, Result};

pub use build::{bn_tree, bn_vertex_count, complete_dary, complete_dary_size};
pub use canon::{canonical_code, CanonicalCode};
pub use expansion::{build_tstar, digital_expansion, DigitalExpansion, Terminal};

/// An undirected tree on vertices `0..n`.
///
/// The empty graph (`n = 0`) is a valid value; it stands for the empty
/// complete tree `C_0`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Tree {
    edges: Vec<(usize, usize)>,
    adjacency: Vec<Vec<usize>>,
}

impl Tree {
    /// Validates an edge list and builds the tree.
    ///
    /// Rejects out-of-range indices, self-loops, duplicate edges, a wrong
    /// edge count, and disconnected or cyclic edge sets.
    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        if n == 0 {
            if edges.is_empty() {
                return Ok(Self::empty());
            }
            return Err(Error::InvalidTree(format!("{} edges on 0 vertices", edges.len())));
        }
        let mut adjacency = vec![Vec::new(); n];
        for (i, &(u, v)) in edges.iter().enumerate() {
            if u >= n || v >= n {
                return Err(Error::InvalidTree(format!(
                    "edge {i} ({u}, {v}) has a vertex outside 0..{n}"
                )));
            }
            if u == v {
                return Err(Error::InvalidTree(format!("edge {i} is a self-loop at {u}")));
            }
            if adjacency[u].contains(&v) {
                return Err(Error::InvalidTree(format!("edge {i} ({u}, {v}) is a duplicate")));
            }
            adjacency[u].push(v);
            adjacency[v].push(u);
        }
        if edges.len() != n - 1 {
            // Too few edges always leaves a component behind; too many closes a cycle.
            let what = if edges.len() < n - 1 { "disconnected" } else { "cyclic" };
            return Err(Error::InvalidTree(format!(
                "{what}: {} edges on {n} vertices",
                edges.len()
            )));
        }
        let reached = bfs_order(&adjacency, 0).len();
        if reached != n {
            return Err(Error::InvalidTree(format!(
                "disconnected: only {reached} of {n} vertices reachable from vertex 0"
            )));
        }
        Ok(Self {
            edges: edges.to_vec(),
            adjacency,
        })
    }

    pub fn empty() -> Self {
        Self {
            edges: Vec::new(),
            adjacency: Vec::new(),
        }
    }

    pub fn single_vertex() -> Self {
        Self {
            edges: Vec::new(),
            adjacency: vec![Vec::new()],
        }
    }

    /// The path on `n` vertices, numbered along the path.
    pub fn path(n: usize) -> Self {
        let edges: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
        Self::from_trusted(n, edges)
    }

    /// The star `K_{1,n-1}` with center 0.
    pub fn star(n: usize) -> Self {
        let edges: Vec<_> = (1..n).map(|i| (0, i)).collect();
        Self::from_trusted(n, edges)
    }

    /// Builds from edges known to form a tree; checked in debug builds only.
    pub(crate) fn from_trusted(n: usize, edges: Vec<(usize, usize)>) -> Self {
        let mut adjacency = vec![Vec::new(); n];
        for &(u, v) in &edges {
            adjacency[u].push(v);
            adjacency[v].push(u);
        }
        let tree = Self { edges, adjacency };
        debug_assert!(
            Self::from_edges(tree.n(), &tree.edges).is_ok(),
            "constructed edge set is not a tree"
        );
        tree
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.adjacency.len()
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.adjacency.is_empty()
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    #[inline]
    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adjacency[v]
    }

    #[inline]
    pub fn degree(&self, v: usize) -> usize {
        self.adjacency[v].len()
    }

    pub fn max_degree(&self) -> usize {
        self.adjacency.iter().map(Vec::len).max().unwrap_or(0)
    }

    /// Vertices in breadth-first order from `root`, with each vertex's parent
    /// (`usize::MAX` for the root).
    pub fn bfs_from(&self, root: usize) -> (Vec<usize>, Vec<usize>) {
        let mut parent = vec![usize::MAX; self.n()];
        let mut order = Vec::with_capacity(self.n());
        let mut seen = vec![false; self.n()];
        seen[root] = true;
        order.push(root);
        let mut head = 0;
        while head < order.len() {
            let u = order[head];
            head += 1;
            for &w in &self.adjacency[u] {
                if !seen[w] {
                    seen[w] = true;
                    parent[w] = u;
                    order.push(w);
                }
            }
        }
        (order, parent)
    }

    /// Copy of this tree with a new leaf (numbered `n`) hung on `at`.
    pub fn with_pendant(&self, at: usize) -> Self {
        let mut edges = self.edges.clone();
        edges.push((at, self.n()));
        Self::from_trusted(self.n() + 1, edges)
    }
}

fn bfs_order(adjacency: &[Vec<usize>], root: usize) -> Vec<usize> {
    let mut seen = vec![false; adjacency.len()];
    let mut order = vec![root];
    seen[root] = true;
    let mut head = 0;
    while head < order.len() {
        let u = order[head];
        head += 1;
        for &w in &adjacency[u] {
            if !seen[w] {
                seen[w] = true;
                order.push(w);
            }
        }
    }
    order
}

/// A tree with a distinguished root. The empty tree has no root.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RootedTree {
    pub tree: Tree,
    pub root: Option<usize>,
}

impl RootedTree {
    pub fn new(tree: Tree, root: usize) -> Result<Self> {
        if root >= tree.n() {
            return Err(Error::Parameter(format!(
                "root {root} outside 0..{}",
                tree.n()
            )));
        }
        Ok(Self {
            tree,
            root: Some(root),
        })
    }

    pub fn empty() -> Self {
        Self {
            tree: Tree::empty(),
            root: None,
        }
    }

    pub fn n(&self) -> usize {
        self.tree.n()
    }
}

/// Incremental construction of trees from rooted pieces. Vertices are
/// numbered in creation order.
#[derive(Debug, Default)]
pub(crate) struct TreeBuilder {
    n: usize,
    edges: Vec<(usize, usize)>,
}

impl TreeBuilder {
    pub(crate) fn new() -> Self {
        Self::default()
    }

    pub(crate) fn add_vertex(&mut self) -> usize {
        self.n += 1;
        self.n - 1
    }

    pub(crate) fn add_edge(&mut self, u: usize, v: usize) {
        self.edges.push((u, v));
    }

    /// Appends a copy of `C_h` with depth-first numbering and returns its root.
    pub(crate) fn attach_complete(&mut self, d: usize, h: usize) -> Option<usize> {
        if h == 0 {
            return None;
        }
        let root = self.n;
        // (parent, height) of subtrees still to create; usize::MAX marks the root.
        let mut stack = vec![(usize::MAX, h)];
        while let Some((parent, height)) = stack.pop() {
            let v = self.add_vertex();
            if parent != usize::MAX {
                self.add_edge(parent, v);
            }
            if height > 1 {
                stack.extend(core::iter::repeat_n((v, height - 1), d));
            }
        }
        Some(root)
    }

    pub(crate) fn vertex_count(&self) -> usize {
        self.n
    }

    pub(crate) fn finish(self) -> Tree {
        Tree::from_trusted(self.n, self.edges)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_disconnected_edge_list() {
        let err = Tree::from_edges(5, &[(0, 1), (1, 2), (3, 4)]).unwrap_err();
        assert!(matches!(err, Error::InvalidTree(ref m) if m.starts_with("disconnected")));
    }

    #[test]
    fn rejects_cycle_with_right_edge_count() {
        // Triangle plus an isolated vertex: n - 1 edges but not a tree.
        let err = Tree::from_edges(4, &[(0, 1), (1, 2), (2, 0)]).unwrap_err();
        assert!(matches!(err, Error::InvalidTree(ref m) if m.starts_with("disconnected")));
        let err = Tree::from_edges(3, &[(0, 1), (1, 2), (2, 0)]).unwrap_err();
        assert!(matches!(err, Error::InvalidTree(ref m) if m.starts_with("cyclic")));
    }

    #[test]
    fn rejects_loops_duplicates_and_range() {
        assert!(Tree::from_edges(2, &[(0, 0)]).is_err());
        assert!(Tree::from_edges(3, &[(0, 1), (1, 0)]).is_err());
        assert!(Tree::from_edges(2, &[(0, 2)]).is_err());
        assert!(Tree::from_edges(0, &[(0, 1)]).is_err());
    }

    #[test]
    fn empty_and_single() {
        assert_eq!(Tree::from_edges(0, &[]).unwrap().n(), 0);
        let t = Tree::from_edges(1, &[]).unwrap();
        assert_eq!((t.n(), t.max_degree()), (1, 0));
    }

    #[test]
    fn builder_complete_tree_preorder() {
        let mut b = TreeBuilder::new();
        let root = b.attach_complete(2, 3).unwrap();
        let t = b.finish();
        assert_eq!(root, 0);
        assert_eq!(t.n(), 7);
        // Preorder: 0 -> 1 -> {2, 3}, 0 -> 4 -> {5, 6}.
        assert_eq!(t.neighbors(0), &[1, 4]);
        assert_eq!(t.neighbors(1), &[0, 2, 3]);
    }
}
