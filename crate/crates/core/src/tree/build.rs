use alloc::format;

use super::{RootedTree, TreeBuilder};
use crate::{Error, Result, Tree};

/// Vertex count of `C_h`: `(d^h - 1) / (d - 1)`. `None` on overflow.
pub fn complete_dary_size(d: usize, h: usize) -> Option<usize> {
    let mut size: usize = 0;
    for _ in 0..h {
        size = size.checked_mul(d)?.checked_add(1)?;
    }
    Some(size)
}

/// The complete `d`-ary tree `C_h`: `C_0` is empty, `C_1` a single vertex,
/// and `C_h` a root carrying `d` copies of `C_{h-1}`. The root is vertex 0.
pub fn complete_dary(d: usize, h: usize) -> Result<RootedTree> {
    if d < 2 {
        return Err(Error::Parameter(format!("branching d = {d} must be >= 2")));
    }
    complete_dary_size(d, h)
        .ok_or_else(|| Error::Parameter(format!("C_{h} with d = {d} is too large")))?;
    let mut b = TreeBuilder::new();
    let root = b.attach_complete(d, h);
    Ok(RootedTree {
        tree: b.finish(),
        root,
    })
}

/// Vertex count of `B_n`: `3 * 2^(n+1) - 2`.
pub fn bn_vertex_count(level: usize) -> Option<usize> {
    let half = 1usize.checked_shl(u32::try_from(level + 1).ok()?)?;
    if half.leading_zeros() < 3 {
        return None;
    }
    Some(3 * half - 2)
}

/// `B_n`: an apex vertex joined to the roots of three disjoint complete
/// binary trees with `2^(n+1) - 1` vertices each (`C_{n+1}` for `d = 2`).
///
/// The apex is vertex 0; the three binary trees follow in preorder.
pub fn bn_tree(level: usize) -> Result<Tree> {
    if bn_vertex_count(level).is_none() {
        return Err(Error::Parameter(format!("B_{level} is too large")));
    }
    let mut b = TreeBuilder::new();
    let apex = b.add_vertex();
    for _ in 0..3 {
        let root = b.attach_complete(2, level + 1).expect("height >= 1");
        b.add_edge(apex, root);
    }
    Ok(b.finish())
}
