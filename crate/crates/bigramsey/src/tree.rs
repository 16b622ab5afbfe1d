//! The tree induced by a linear order and a well-preorder, with meets and
//! generated subtrees.
//!
//! For a linear order `<=` and well-preorder `⪯` on the same ground set, the
//! ancestor relation is `a ⊑ b` iff `a ⪯ b` and no `c` strictly between `a`
//! and `b` (in `<=`, regardless of direction) has `c ⪯ a` and `c ⪯ b`. When
//! `⪯` is a linear well-order this is exactly the binary search tree obtained
//! by inserting elements in `⪯` order with `<=` as the key order. With ties
//! the relation can fail the tree axioms, in which case the tree is undefined.

use crate::orders::{Elem, LinearOrder, WellPreorder};

/// A finite rooted tree given by its ancestor partial order.
///
/// `anc[a]` is the bitmask of ancestors of `a`, including `a` itself.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrderTree {
    n: usize,
    anc: Vec<u64>,
    parent: Vec<Option<Elem>>,
    children: Vec<Vec<Elem>>,
    root: Elem,
    depth: Vec<usize>,
}

impl OrderTree {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn root(&self) -> Elem {
        self.root
    }

    pub fn parent(&self, e: Elem) -> Option<Elem> {
        self.parent[e]
    }

    pub fn children(&self, e: Elem) -> &[Elem] {
        &self.children[e]
    }

    pub fn depth(&self, e: Elem) -> usize {
        self.depth[e]
    }

    /// Reflexive ancestor test: `a ⊑ b`.
    pub fn is_ancestor(&self, a: Elem, b: Elem) -> bool {
        self.anc[b] >> a & 1 == 1
    }

    pub fn is_strict_ancestor(&self, a: Elem, b: Elem) -> bool {
        a != b && self.is_ancestor(a, b)
    }

    pub fn is_leaf(&self, e: Elem) -> bool {
        self.children[e].is_empty()
    }

    pub fn leaves(&self) -> Vec<Elem> {
        (0..self.n).filter(|&e| self.is_leaf(e)).collect()
    }

    /// The ⊑-maximum common ancestor of `a` and `b`.
    pub fn meet(&self, a: Elem, b: Elem) -> Elem {
        let mut common = self.anc[a] & self.anc[b];
        debug_assert!(common != 0);
        let mut best = common.trailing_zeros() as usize;
        common &= common - 1;
        while common != 0 {
            let e = common.trailing_zeros() as usize;
            if self.depth[e] > self.depth[best] {
                best = e;
            }
            common &= common - 1;
        }
        best
    }

    /// Closure of `set` under binary meets, as a bitmask.
    pub fn meet_closure(&self, set: u64) -> u64 {
        let mut closed = set;
        loop {
            let mut added = closed;
            let members: Vec<Elem> =
                (0..self.n).filter(|&e| closed >> e & 1 == 1).collect();
            for (i, &a) in members.iter().enumerate() {
                for &b in &members[i + 1..] {
                    added |= 1 << self.meet(a, b);
                }
            }
            if added == closed {
                return closed;
            }
            closed = added;
        }
    }

    /// The subtree generated by `set`: its meet closure together with the
    /// ancestor relation restricted to it. Elements are returned ascending;
    /// the relation is given as pairs `(a, b)` with `a ⊑ b`, `a != b`.
    pub fn generated_subtree(&self, set: u64) -> (Vec<Elem>, Vec<(Elem, Elem)>) {
        assert!(set != 0, "generated subtree of an empty set");
        let closed = self.meet_closure(set);
        let members: Vec<Elem> =
            (0..self.n).filter(|&e| closed >> e & 1 == 1).collect();
        let mut rel = Vec::new();
        for &a in &members {
            for &b in &members {
                if a != b && self.is_ancestor(a, b) {
                    rel.push((a, b));
                }
            }
        }
        (members, rel)
    }

    /// Per-element count of children, for branching checks.
    pub fn child_counts(&self) -> Vec<usize> {
        self.children.iter().map(|c| c.len()).collect()
    }
}

/// Builds `T(V, <=, ⪯)`. Returns `None` when the induced relation violates
/// the tree axioms; that is a regular outcome, not an error.
pub fn tree_from_orders(leq: &LinearOrder, pre: &WellPreorder) -> Option<OrderTree> {
    let n = leq.n();
    if n != pre.n() || n == 0 {
        return None;
    }
    debug_assert!(n <= 64);

    // anc[b] = bitmask of a with a ⊑ b (reflexive closure included).
    let mut anc = vec![0u64; n];
    for b in 0..n {
        for a in 0..n {
            if a == b {
                anc[b] |= 1 << a;
                continue;
            }
            if !pre.le(a, b) {
                continue;
            }
            let blocked = (0..n).any(|c| {
                c != a && c != b
                    && leq.strictly_between(c, a, b)
                    && pre.le(c, a)
                    && pre.le(c, b)
            });
            if !blocked {
                anc[b] |= 1 << a;
            }
        }
    }

    // Antisymmetry.
    for a in 0..n {
        for b in a + 1..n {
            if anc[b] >> a & 1 == 1 && anc[a] >> b & 1 == 1 {
                return None;
            }
        }
    }
    // Transitivity: a ⊑ b and b ⊑ c imply a ⊑ c.
    for c in 0..n {
        let mut rest = anc[c];
        while rest != 0 {
            let b = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            if anc[c] & anc[b] != anc[b] {
                return None;
            }
        }
    }
    // Unique minimum.
    let root = (0..n).find(|&r| (0..n).all(|b| anc[b] >> r & 1 == 1))?;
    // Every down-set is a chain.
    for a in 0..n {
        let mut members: Vec<Elem> =
            (0..n).filter(|&b| anc[a] >> b & 1 == 1).collect();
        members.sort_by_key(|&b| anc[b].count_ones());
        for w in members.windows(2) {
            if anc[w[1]] >> w[0] & 1 != 1 {
                return None;
            }
        }
    }

    let depth: Vec<usize> = anc.iter().map(|m| m.count_ones() as usize - 1).collect();
    let mut parent = vec![None; n];
    let mut children = vec![Vec::new(); n];
    for b in 0..n {
        if b == root {
            continue;
        }
        // Unique maximal strict ancestor: the deepest one.
        let p = (0..n)
            .filter(|&a| a != b && anc[b] >> a & 1 == 1)
            .max_by_key(|&a| depth[a])
            .expect("non-root element has an ancestor");
        parent[b] = Some(p);
        children[p].push(b);
    }
    for c in &mut children {
        c.sort_unstable();
    }

    Some(OrderTree { n, anc, parent, children, root, depth })
}

/// True iff the tree is defined and every vertex is a leaf or has exactly
/// two children.
pub fn is_compatible_pair(leq: &LinearOrder, pre: &WellPreorder) -> bool {
    match tree_from_orders(leq, pre) {
        Some(t) => t.child_counts().iter().all(|&c| c == 0 || c == 2),
        None => false,
    }
}

/// Reference implementation: parent vector of the binary search tree built by
/// inserting elements in `⪯` order (which must be linear) with `<=` as the
/// key order. Independent of `tree_from_orders`.
pub fn bst_insertion_parents(leq: &LinearOrder, pre: &WellPreorder) -> Vec<Option<Elem>> {
    assert!(pre.is_linear(), "binary search tree insertion needs a linear order");
    let mut order: Vec<Elem> = (0..leq.n()).collect();
    order.sort_by_key(|&e| pre.level(e));
    let mut parent = vec![None; leq.n()];
    let mut left: Vec<Option<Elem>> = vec![None; leq.n()];
    let mut right: Vec<Option<Elem>> = vec![None; leq.n()];
    let mut iter = order.into_iter();
    let root = match iter.next() {
        Some(r) => r,
        None => return parent,
    };
    for e in iter {
        let mut at = root;
        loop {
            let slot = if leq.lt(e, at) { &mut left[at] } else { &mut right[at] };
            match *slot {
                Some(next) => at = next,
                None => {
                    *slot = Some(e);
                    parent[e] = Some(at);
                    break;
                }
            }
        }
    }
    parent
}

#[cfg(test)]
mod tests {
    use super::*;

    fn linear(seq: &[Elem]) -> (LinearOrder, WellPreorder) {
        (LinearOrder::identity(seq.len()), WellPreorder::from_sequence(seq).unwrap())
    }

    #[test]
    fn singleton_tree() {
        let (leq, pre) = linear(&[0]);
        let t = tree_from_orders(&leq, &pre).unwrap();
        assert_eq!(t.root(), 0);
        assert_eq!(t.parent(0), None);
        assert!(t.is_leaf(0));
    }

    #[test]
    fn three_elements_balanced() {
        // Insertion order 1, 0, 2 over 0 < 1 < 2: root 1 with children 0, 2.
        let (leq, pre) = linear(&[1, 0, 2]);
        let t = tree_from_orders(&leq, &pre).unwrap();
        assert_eq!(t.root(), 1);
        assert_eq!(t.parent(0), Some(1));
        assert_eq!(t.parent(2), Some(1));
        assert_eq!(t.children(1), &[0, 2]);
    }

    #[test]
    fn three_elements_chain() {
        let (leq, pre) = linear(&[0, 1, 2]);
        let t = tree_from_orders(&leq, &pre).unwrap();
        assert!(t.is_ancestor(0, 1) && t.is_ancestor(1, 2));
        assert_eq!(t.parent(2), Some(1));
    }

    #[test]
    fn unseparated_tie_is_undefined() {
        // Two tied elements with no earlier element between them: both
        // a ⊑ b and b ⊑ a hold, so antisymmetry fails.
        let leq = LinearOrder::identity(2);
        let pre = WellPreorder::new(vec![0, 0]).unwrap();
        assert_eq!(tree_from_orders(&leq, &pre), None);
    }

    #[test]
    fn separated_tie_is_defined() {
        // 1 inserted first between the tied 0 and 2 separates them.
        let leq = LinearOrder::identity(3);
        let pre = WellPreorder::new(vec![1, 0, 1]).unwrap();
        let t = tree_from_orders(&leq, &pre).unwrap();
        assert_eq!(t.root(), 1);
        assert_eq!(t.children(1), &[0, 2]);
    }

    #[test]
    fn meet_examples() {
        let (leq, pre) = linear(&[1, 0, 2]);
        let t = tree_from_orders(&leq, &pre).unwrap();
        assert_eq!(t.meet(0, 0), 0);
        assert_eq!(t.meet(0, 2), 1);

        let (leq, pre) = linear(&[0, 1, 2]);
        let chain = tree_from_orders(&leq, &pre).unwrap();
        assert_eq!(chain.meet(1, 2), 1);
    }

    #[test]
    fn generated_subtree_examples() {
        let (leq, pre) = linear(&[1, 0, 2]);
        let t = tree_from_orders(&leq, &pre).unwrap();
        let (single, rel) = t.generated_subtree(1 << 0);
        assert_eq!(single, vec![0]);
        assert!(rel.is_empty());
        let (closed, _) = t.generated_subtree(1 << 0 | 1 << 2);
        assert_eq!(closed, vec![0, 1, 2]);
    }

    #[test]
    fn generated_subtree_full_binary_seven() {
        // Full binary tree on 7 vertices, in-order labels, insertion order
        // 3, 1, 5, 0, 2, 4, 6. The closure of the 4 leaves is everything.
        let (leq, pre) = linear(&[3, 1, 5, 0, 2, 4, 6]);
        let t = tree_from_orders(&leq, &pre).unwrap();
        let leaves = t.leaves();
        assert_eq!(leaves, vec![0, 2, 4, 6]);
        let mask = leaves.iter().fold(0u64, |m, &l| m | 1 << l);
        let (closed, _) = t.generated_subtree(mask);
        assert_eq!(closed.len(), 7);
    }

    #[test]
    fn compatible_pair_examples() {
        let (leq, pre) = linear(&[0]);
        assert!(is_compatible_pair(&leq, &pre));
        let (leq, pre) = linear(&[1, 0, 2]);
        assert!(is_compatible_pair(&leq, &pre));
        let (leq, pre) = linear(&[0, 1, 2]);
        assert!(!is_compatible_pair(&leq, &pre));
    }

    #[test]
    fn matches_bst_insertion() {
        let (leq, pre) = linear(&[3, 1, 5, 0, 2, 4, 6]);
        let t = tree_from_orders(&leq, &pre).unwrap();
        let bst = bst_insertion_parents(&leq, &pre);
        for e in 0..7 {
            assert_eq!(t.parent(e), bst[e]);
        }
    }
}
