use alloc::vec;
use alloc::vec::Vec;

use crate::tree::TreeBuilder;

/// Every rooted tree (up to isomorphism) with at most `max_size` vertices in
/// which each vertex has at most `max_children` children.
///
/// Ids are assigned in order of size; a tree is stored as the non-increasing
/// list of its children's ids, which makes the representation canonical.
#[derive(Debug, Clone)]
pub(crate) struct Catalog {
    sizes: Vec<usize>,
    children: Vec<Vec<usize>>,
    /// `size_end[s]` is the number of ids whose size is at most `s`.
    size_end: Vec<usize>,
}

impl Catalog {
    pub(crate) fn new(max_size: usize, max_children: usize) -> Self {
        let mut cat = Self {
            sizes: Vec::new(),
            children: Vec::new(),
            size_end: vec![0],
        };
        if max_size == 0 {
            return cat;
        }
        cat.sizes.push(1);
        cat.children.push(Vec::new());
        cat.size_end.push(1);
        for size in 2..=max_size {
            let found: Vec<Vec<usize>> =
                Multisets::new(&cat, size - 1, max_children, size - 1).collect();
            for kids in found {
                cat.sizes.push(size);
                cat.children.push(kids);
            }
            cat.size_end.push(cat.sizes.len());
        }
        cat
    }

    #[cfg(test)]
    pub(crate) fn len(&self) -> usize {
        self.sizes.len()
    }

    pub(crate) fn size(&self, id: usize) -> usize {
        self.sizes[id]
    }

    /// Ids with exactly `size` vertices.
    pub(crate) fn ids_of_size(&self, size: usize) -> core::ops::Range<usize> {
        if size == 0 || size >= self.size_end.len() {
            return 0..0;
        }
        self.size_end[size - 1]..self.size_end[size]
    }

    /// Appends the tree `id` in preorder and returns its root.
    pub(crate) fn attach(&self, b: &mut TreeBuilder, id: usize) -> usize {
        let root = b.vertex_count();
        let mut stack = vec![(usize::MAX, id)];
        while let Some((parent, id)) = stack.pop() {
            let v = b.add_vertex();
            if parent != usize::MAX {
                b.add_edge(parent, v);
            }
            stack.extend(self.children[id].iter().rev().map(|&c| (v, c)));
        }
        root
    }

    fn last_id_with_size_at_most(&self, size: usize) -> Option<usize> {
        let s = size.min(self.size_end.len() - 1);
        self.size_end[s].checked_sub(1)
    }
}

/// Non-increasing id sequences whose sizes sum to `target`, using at most
/// `max_parts` parts of at most `max_part_size` vertices each.
pub(crate) struct Multisets<'a> {
    catalog: &'a Catalog,
    target: usize,
    max_parts: usize,
    max_part_size: usize,
    stack: Vec<usize>,
    sum: usize,
    started: bool,
    done: bool,
}

impl<'a> Multisets<'a> {
    pub(crate) fn new(catalog: &'a Catalog, target: usize, max_parts: usize, max_part_size: usize) -> Self {
        Self {
            catalog,
            target,
            max_parts,
            max_part_size,
            stack: Vec::new(),
            sum: 0,
            started: false,
            done: false,
        }
    }

    /// Largest admissible id not above `upper` for the current partial sum.
    fn pick(&self, upper: Option<usize>) -> Option<usize> {
        let parts_left = self.max_parts.checked_sub(self.stack.len())?;
        if parts_left == 0 {
            return None;
        }
        let remaining = self.target - self.sum;
        let mut hi = self
            .catalog
            .last_id_with_size_at_most(remaining.min(self.max_part_size))?;
        if let Some(u) = upper {
            hi = hi.min(u);
        }
        // Later parts are no larger, so `parts_left` copies of this size must suffice.
        (remaining <= parts_left.saturating_mul(self.catalog.size(hi))).then_some(hi)
    }

    fn extend(&mut self) -> bool {
        while self.sum < self.target {
            match self.pick(self.stack.last().copied()) {
                Some(id) => {
                    self.sum += self.catalog.size(id);
                    self.stack.push(id);
                }
                None => return false,
            }
        }
        true
    }

    fn bump(&mut self) -> bool {
        while let Some(id) = self.stack.pop() {
            self.sum -= self.catalog.size(id);
            if id == 0 {
                continue;
            }
            if let Some(next) = self.pick(Some(id - 1)) {
                self.sum += self.catalog.size(next);
                self.stack.push(next);
                return true;
            }
        }
        false
    }
}

impl Iterator for Multisets<'_> {
    type Item = Vec<usize>;

    fn next(&mut self) -> Option<Vec<usize>> {
        if self.done {
            return None;
        }
        let mut complete = if self.started {
            false
        } else {
            self.started = true;
            self.extend()
        };
        while !complete {
            if !self.bump() {
                self.done = true;
                return None;
            }
            complete = self.extend();
        }
        Some(self.stack.clone())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rooted_tree_counts() {
        // Rooted trees by vertex count (OEIS A000081).
        let cat = Catalog::new(8, usize::MAX);
        let counts: Vec<usize> = (1..=8).map(|s| cat.ids_of_size(s).len()).collect();
        assert_eq!(counts, vec![1, 1, 2, 4, 9, 20, 48, 115]);
    }

    #[test]
    fn binary_rooted_counts() {
        // At most two children per vertex (OEIS A001190 shifted: 1, 1, 2, 3, 6, 11, 23).
        let cat = Catalog::new(7, 2);
        let counts: Vec<usize> = (1..=7).map(|s| cat.ids_of_size(s).len()).collect();
        assert_eq!(counts, vec![1, 1, 2, 3, 6, 11, 23]);
    }

    #[test]
    fn unary_catalog_is_paths() {
        let cat = Catalog::new(5, 1);
        assert_eq!(cat.len(), 5);
    }

    #[test]
    fn multisets_of_empty_target() {
        let cat = Catalog::new(3, 2);
        let all: Vec<_> = Multisets::new(&cat, 0, 3, 3).collect();
        assert_eq!(all, vec![Vec::<usize>::new()]);
    }
}
