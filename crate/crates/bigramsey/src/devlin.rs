//! Enumeration of order shapes and the two independent counting oracles.
//!
//! Every order shape on `2n-1` elements normalizes (by `<=` rank) to a full
//! binary tree whose in-order traversal is `0..2n-1`, together with a linear
//! extension of its ancestor order as the insertion order. Rigidity makes
//! distinct (tree, extension) pairs non-isomorphic, so the class count is
//! the number of such pairs: the tangent number.

use num_bigint::BigUint;
use num_traits::{One, Zero};
use rayon::prelude::*;

use crate::catalog::{Catalog, EnumError, Mode};
use crate::orders::{LinearOrder, WellPreorder};
use crate::shape::{DevlinShape, Family};

/// A full binary tree over in-order slots `0..2m-1`.
#[derive(Debug, Clone)]
pub struct FullTree {
    pub parent: Vec<Option<usize>>,
    pub children: Vec<Vec<usize>>,
    pub root: usize,
}

impl FullTree {
    pub fn size(&self) -> usize {
        self.parent.len()
    }

    pub fn leaf_slots(&self) -> Vec<usize> {
        (0..self.size()).filter(|&s| self.children[s].is_empty()).collect()
    }

    pub fn subtree_sizes(&self) -> Vec<usize> {
        let mut size = vec![1usize; self.size()];
        // Children have higher depth; process by decreasing depth.
        let mut order: Vec<usize> = (0..self.size()).collect();
        let depth: Vec<usize> = (0..self.size())
            .map(|mut e| {
                let mut d = 0;
                while let Some(p) = self.parent[e] {
                    e = p;
                    d += 1;
                }
                d
            })
            .collect();
        order.sort_by_key(|&e| std::cmp::Reverse(depth[e]));
        for e in order {
            if let Some(p) = self.parent[e] {
                size[p] += size[e];
            }
        }
        size
    }

    /// Number of linear extensions of the ancestor order, by the hook-length
    /// formula: `m! / prod(subtree sizes)`.
    pub fn extension_count(&self) -> BigUint {
        let mut num = BigUint::one();
        for k in 1..=self.size() {
            num *= BigUint::from(k);
        }
        for s in self.subtree_sizes() {
            num /= BigUint::from(s);
        }
        num
    }

    /// Visits every linear extension of the ancestor order in lexicographic
    /// order of the slot sequence. The callback receives slots in insertion
    /// order.
    pub fn for_each_extension(&self, f: &mut impl FnMut(&[usize])) {
        let mut available: Vec<usize> = vec![self.root];
        let mut seq = Vec::with_capacity(self.size());
        self.extend_rec(&mut available, &mut seq, f);
    }

    fn extend_rec(
        &self,
        available: &mut Vec<usize>,
        seq: &mut Vec<usize>,
        f: &mut impl FnMut(&[usize]),
    ) {
        if seq.len() == self.size() {
            f(seq);
            return;
        }
        // Candidates ascending for lexicographic output.
        let mut cands: Vec<usize> = available.clone();
        cands.sort_unstable();
        for slot in cands {
            let pos = available.iter().position(|&s| s == slot).unwrap();
            available.swap_remove(pos);
            for &c in &self.children[slot] {
                available.push(c);
            }
            seq.push(slot);
            self.extend_rec(available, seq, f);
            seq.pop();
            for &c in &self.children[slot] {
                let p = available.iter().position(|&s| s == c).unwrap();
                available.swap_remove(p);
            }
            available.push(slot);
        }
    }
}

/// All full binary trees with the given number of leaves, in-order labeled,
/// generated recursively in left-subtree-size order.
pub fn full_trees(leaves: usize) -> Vec<FullTree> {
    assert!(leaves >= 1);
    let size = 2 * leaves - 1;
    gen_trees(0, size)
        .into_iter()
        .map(|(root, edges)| {
            let mut parent = vec![None; size];
            let mut children = vec![Vec::new(); size];
            for (c, p) in edges {
                parent[c] = Some(p);
                children[p].push(c);
            }
            for ch in &mut children {
                ch.sort_unstable();
            }
            FullTree { parent, children, root }
        })
        .collect()
}

fn gen_trees(lo: usize, size: usize) -> Vec<(usize, Vec<(usize, usize)>)> {
    if size == 1 {
        return vec![(lo, Vec::new())];
    }
    let mut out = Vec::new();
    let mut lsize = 1;
    while lsize < size {
        let root = lo + lsize;
        let rsize = size - lsize - 1;
        for (lroot, ledges) in gen_trees(lo, lsize) {
            for (rroot, redges) in gen_trees(root + 1, rsize) {
                let mut edges = ledges.clone();
                edges.extend_from_slice(&redges);
                edges.push((lroot, root));
                edges.push((rroot, root));
                out.push((root, edges));
            }
        }
        lsize += 2;
    }
    out
}

/// `tan^(2n-1)(0)` via the boustrophedon (Entringer) recurrence; independent
/// of the tree enumerator.
pub fn tangent_number(n: usize) -> BigUint {
    assert!(n >= 1);
    let target = 2 * n - 1;
    let mut row: Vec<BigUint> = vec![BigUint::one()];
    for m in 1..=target {
        // row holds E(m-1, 0..m-1); build E(m, 0..m).
        let mut next: Vec<BigUint> = Vec::with_capacity(m + 1);
        next.push(BigUint::zero());
        for k in 1..=m {
            let v = next[k - 1].clone() + row[m - k].clone();
            next.push(v);
        }
        row = next;
    }
    row[target].clone()
}

/// Second independent oracle: sums linear-extension counts over all full
/// binary trees with `n` leaves via the hook-length formula.
pub fn hook_count_oracle(n: usize) -> BigUint {
    assert!(n >= 1);
    full_trees(n)
        .iter()
        .map(|t| t.extension_count())
        .fold(BigUint::zero(), |a, b| a + b)
}

/// Visits every (tree, insertion order) pair for shapes on `2n-1` elements.
/// `<=` is the in-order slot order; the preorder is linear.
pub fn for_each_order_pair(n: usize, mut f: impl FnMut(&FullTree, &WellPreorder)) {
    for tree in full_trees(n) {
        tree.for_each_extension(&mut |seq| {
            let mut level = vec![0usize; seq.len()];
            for (pos, &slot) in seq.iter().enumerate() {
                level[slot] = pos;
            }
            let pre = WellPreorder::new(level).unwrap();
            f(&tree, &pre);
        });
    }
}

/// Enumerates all order-shape classes on `2n-1` elements.
pub fn enumerate_devlin(n: usize, mode: Mode, cap: usize) -> Result<Catalog, EnumError> {
    assert!(n >= 1);
    let trees = full_trees(n);
    match mode {
        Mode::CountOnly => {
            let total: u64 = trees
                .par_iter()
                .map(|tree| {
                    let mut c = 0u64;
                    tree.for_each_extension(&mut |_| c += 1);
                    c
                })
                .sum();
            Ok(Catalog::count_only(Family::Devlin, format!("n={n}"), BigUint::from(total)))
        }
        Mode::Full => {
            let per_tree: Vec<Vec<crate::shape::CanonicalCode>> = trees
                .par_iter()
                .map(|tree| {
                    let mut codes = Vec::new();
                    tree.for_each_extension(&mut |seq| {
                        let mut level = vec![0usize; seq.len()];
                        for (pos, &slot) in seq.iter().enumerate() {
                            level[slot] = pos;
                        }
                        let shape = DevlinShape::new(
                            LinearOrder::identity(seq.len()),
                            WellPreorder::new(level).unwrap(),
                        )
                        .expect("enumerated pair must be compatible");
                        codes.push(shape.canonical_code());
                    });
                    codes
                })
                .collect();
            let mut codes: Vec<_> = per_tree.into_iter().flatten().collect();
            if codes.len() > cap {
                return Err(EnumError::ResourceCap { cap });
            }
            let raw = codes.len();
            codes.sort_unstable();
            codes.dedup();
            // Rigidity: the raw enumeration never repeats a class.
            assert_eq!(raw, codes.len(), "duplicate class in raw enumeration");
            Ok(Catalog::with_codes(Family::Devlin, format!("n={n}"), codes))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn catalan_many_trees() {
        assert_eq!(full_trees(1).len(), 1);
        assert_eq!(full_trees(2).len(), 1);
        assert_eq!(full_trees(3).len(), 2);
        assert_eq!(full_trees(4).len(), 5);
        assert_eq!(full_trees(5).len(), 14);
    }

    #[test]
    fn leaves_are_even_slots() {
        for tree in full_trees(4) {
            assert_eq!(tree.leaf_slots(), vec![0, 2, 4, 6]);
        }
    }

    #[test]
    fn tangent_numbers_match_known_values() {
        let expect: [u64; 7] = [1, 2, 16, 272, 7936, 353792, 22368256];
        for (i, &v) in expect.iter().enumerate() {
            assert_eq!(tangent_number(i + 1), BigUint::from(v));
        }
    }

    #[test]
    fn hook_oracle_small_cases() {
        // n=2: one tree on 3 nodes, 3!/(3*1*1) = 2.
        assert_eq!(hook_count_oracle(2), BigUint::from(2u32));
        // n=3: two trees on 5 nodes, 8 extensions each.
        let counts: Vec<BigUint> =
            full_trees(3).iter().map(|t| t.extension_count()).collect();
        assert_eq!(counts, vec![BigUint::from(8u32), BigUint::from(8u32)]);
        assert_eq!(hook_count_oracle(3), BigUint::from(16u32));
        // n=4: four trees contribute 48, the balanced one 80.
        let mut counts: Vec<u32> = full_trees(4)
            .iter()
            .map(|t| {
                let digits = t.extension_count().to_u32_digits();
                digits[0]
            })
            .collect();
        counts.sort_unstable();
        assert_eq!(counts, vec![48, 48, 48, 48, 80]);
        assert_eq!(hook_count_oracle(4), BigUint::from(272u32));
    }

    #[test]
    fn extensions_are_lexicographic_and_complete() {
        let tree = &full_trees(3)[0];
        let mut seqs = Vec::new();
        tree.for_each_extension(&mut |s| seqs.push(s.to_vec()));
        assert_eq!(seqs.len(), 8);
        let mut sorted = seqs.clone();
        sorted.sort();
        assert_eq!(seqs, sorted);
    }

    #[test]
    fn small_catalogs() {
        for (n, expect) in [(1usize, 1u64), (2, 2), (3, 16), (4, 272)] {
            let full = enumerate_devlin(n, Mode::Full, 1 << 20).unwrap();
            assert_eq!(full.count, BigUint::from(expect));
            assert_eq!(full.codes.as_ref().unwrap().len() as u64, expect);
            let count = enumerate_devlin(n, Mode::CountOnly, 1 << 20).unwrap();
            assert_eq!(count.count, BigUint::from(expect));
        }
    }

    #[test]
    fn cap_is_enforced() {
        assert!(matches!(
            enumerate_devlin(4, Mode::Full, 100),
            Err(EnumError::ResourceCap { cap: 100 })
        ));
    }

    #[test]
    fn every_tree_appears_among_shapes() {
        // Surjectivity over Catalan structures: each tree contributes at
        // least one extension.
        for tree in full_trees(4) {
            let mut any = false;
            tree.for_each_extension(&mut |_| any = true);
            assert!(any);
        }
    }
}
