use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use super::TreeBuilder;
use crate::{Error, Result, Tree};

/// Isomorphism-invariant encoding of a free tree.
///
/// The tree is rooted at its center (for bicentral trees, at whichever of the
/// two centers gives the smaller code) and written as balanced parentheses,
/// each vertex as `(` followed by its children's codes in sorted order and `)`.
/// Two trees have equal codes iff they are isomorphic.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CanonicalCode(Vec<u8>);

impl CanonicalCode {
    pub fn as_bytes(&self) -> &[u8] {
        &self.0
    }

    pub fn vertex_count(&self) -> usize {
        self.0.len() / 2
    }

    /// Parses the parenthesis form produced by `Display`.
    pub fn parse(s: &str) -> Result<Self> {
        let bytes = s.as_bytes();
        let mut depth = 0usize;
        for (i, &b) in bytes.iter().enumerate() {
            match b {
                b'(' => depth += 1,
                b')' if depth > 0 => {
                    depth -= 1;
                    if depth == 0 && i + 1 != bytes.len() {
                        return Err(Error::Parameter("code has more than one root".into()));
                    }
                }
                _ => return Err(Error::Parameter("code is not balanced parentheses".into())),
            }
        }
        if depth != 0 || bytes.is_empty() {
            return Err(Error::Parameter("code is not balanced parentheses".into()));
        }
        let code = Self(bytes.to_vec());
        // Only codes that are already canonical are accepted.
        if canonical_code(&code.to_tree())? != code {
            return Err(Error::Parameter("code is not in canonical form".into()));
        }
        Ok(code)
    }

    /// Rebuilds a representative tree, vertices numbered in preorder.
    pub fn to_tree(&self) -> Tree {
        let mut b = TreeBuilder::new();
        let mut stack: Vec<usize> = Vec::new();
        for &c in &self.0 {
            if c == b'(' {
                let v = b.add_vertex();
                if let Some(&p) = stack.last() {
                    b.add_edge(p, v);
                }
                stack.push(v);
            } else {
                stack.pop();
            }
        }
        b.finish()
    }
}

impl fmt::Display for CanonicalCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        // Only '(' and ')' are ever stored.
        f.write_str(core::str::from_utf8(&self.0).map_err(|_| fmt::Error)?)
    }
}

impl From<CanonicalCode> for String {
    fn from(c: CanonicalCode) -> Self {
        alloc::format!("{c}")
    }
}

/// Canonical code of `t`; fails on the empty tree.
pub fn canonical_code(t: &Tree) -> Result<CanonicalCode> {
    match centers(t).as_slice() {
        [] => Err(Error::Parameter("canonical code of the empty tree".into())),
        [c] => Ok(CanonicalCode(rooted_code(t, *c, usize::MAX))),
        [a, b, ..] => {
            let x = rooted_code(t, *a, usize::MAX);
            let y = rooted_code(t, *b, usize::MAX);
            Ok(CanonicalCode(x.min(y)))
        }
    }
}

/// Sorted-children parenthesis code of the subtree at `root`, not crossing
/// into `blocked` (pass `usize::MAX` for the whole tree).
pub(crate) fn rooted_code(t: &Tree, root: usize, blocked: usize) -> Vec<u8> {
    let n = t.n();
    let mut parent = vec![usize::MAX; n];
    let mut order = Vec::new();
    let mut stack = vec![root];
    parent[root] = blocked;
    while let Some(v) = stack.pop() {
        order.push(v);
        for &w in t.neighbors(v) {
            if w != parent[v] && w != blocked {
                parent[w] = v;
                stack.push(w);
            }
        }
    }
    let mut kids: Vec<Vec<Vec<u8>>> = vec![Vec::new(); n];
    for &v in order.iter().rev() {
        let mut children = core::mem::take(&mut kids[v]);
        children.sort_unstable();
        let len = 2 + children.iter().map(Vec::len).sum::<usize>();
        let mut code = Vec::with_capacity(len);
        code.push(b'(');
        for c in children {
            code.extend_from_slice(&c);
        }
        code.push(b')');
        if v == root {
            return code;
        }
        kids[parent[v]].push(code);
    }
    unreachable!("root is always the first vertex in DFS order")
}

/// The one or two central vertices, found by repeatedly stripping leaves.
pub(crate) fn centers(t: &Tree) -> Vec<usize> {
    let n = t.n();
    if n <= 2 {
        return (0..n).collect();
    }
    let mut degree: Vec<usize> = (0..n).map(|v| t.degree(v)).collect();
    let mut layer: Vec<usize> = (0..n).filter(|&v| degree[v] == 1).collect();
    let mut remaining = n;
    while remaining > 2 {
        remaining -= layer.len();
        let mut next = Vec::new();
        for &leaf in &layer {
            for &w in t.neighbors(leaf) {
                degree[w] -= 1;
                if degree[w] == 1 {
                    next.push(w);
                }
            }
        }
        layer = next;
    }
    layer.sort_unstable();
    layer
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tree::{bn_tree, build_tstar};

    fn relabel(t: &Tree, perm: &[usize]) -> Tree {
        let edges: Vec<_> = t.edges().iter().map(|&(u, v)| (perm[u], perm[v])).collect();
        Tree::from_edges(t.n(), &edges).unwrap()
    }

    #[test]
    fn path_relabeling_is_invisible() {
        let p4 = Tree::path(4);
        let q = relabel(&p4, &[2, 0, 3, 1]);
        assert_eq!(canonical_code(&p4).unwrap(), canonical_code(&q).unwrap());
    }

    #[test]
    fn path_and_star_differ() {
        assert_ne!(
            canonical_code(&Tree::path(4)).unwrap(),
            canonical_code(&Tree::star(4)).unwrap()
        );
    }

    #[test]
    fn bn1_matches_tstar10() {
        assert_eq!(
            canonical_code(&bn_tree(1).unwrap()).unwrap(),
            canonical_code(&build_tstar(10, 2).unwrap()).unwrap()
        );
    }

    #[test]
    fn empty_tree_rejected() {
        assert!(canonical_code(&Tree::empty()).is_err());
    }

    #[test]
    fn centers_of_paths() {
        assert_eq!(centers(&Tree::path(5)), vec![2]);
        assert_eq!(centers(&Tree::path(6)), vec![2, 3]);
        assert_eq!(centers(&Tree::path(1)), vec![0]);
    }

    #[test]
    fn parse_roundtrip_and_rejections() {
        let code = canonical_code(&bn_tree(2).unwrap()).unwrap();
        let text: String = code.clone().into();
        assert_eq!(CanonicalCode::parse(&text).unwrap(), code);
        assert_eq!(code.to_tree().n(), 22);
        assert!(CanonicalCode::parse("(()").is_err());
        assert!(CanonicalCode::parse("()()").is_err());
        // P_3 rooted at an end is a valid tree but not the canonical rooting.
        assert!(CanonicalCode::parse("((()))").is_err());
        assert!(CanonicalCode::parse("(()())").is_ok());
    }
}
