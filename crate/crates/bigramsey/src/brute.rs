//! Naive counting oracles. These deliberately avoid the structured
//! enumerators: they iterate over raw order pairs (and, for hypergraphs,
//! raw placements of the second sort), filter by the validity predicates,
//! and deduplicate by canonical code.

use std::collections::BTreeSet;

use crate::hyper::{
    check_def51, hypergraph_compatible, neighbourhood_vertices, Hypergraph3, TieReading,
};
use crate::orders::{Elem, LinearOrder, WellPreorder};
use crate::sauer::Graph;
use crate::shape::{CanonicalCode, DevlinShape, HyperShape, SauerShape};
use crate::tree::tree_from_orders;
use crate::util::{for_each_subset, permutations};

/// Counts order-shape classes on `2n-1` elements by iterating over all
/// pairs of a linear order and a linear insertion order.
pub fn brute_devlin_oracle(n: usize) -> usize {
    assert!(n >= 1);
    let m = 2 * n - 1;
    let mut codes = BTreeSet::new();
    for leq_seq in permutations(m) {
        let leq = LinearOrder::from_sequence(&leq_seq).unwrap();
        for pre_seq in permutations(m) {
            let pre = WellPreorder::from_sequence(&pre_seq).unwrap();
            if let Ok(shape) = DevlinShape::new(leq.clone(), pre) {
                codes.insert(shape.canonical_code());
            }
        }
    }
    codes.len()
}

/// Counts graph-shape classes for `g` by iterating over all order pairs on
/// `2n-1` elements and all labeled copies of `g` on the resulting leaves.
pub fn brute_sauer_oracle(g: &Graph) -> usize {
    assert!(g.n >= 1);
    let m = 2 * g.n - 1;
    let perms = permutations(g.n);
    let mut codes = BTreeSet::new();
    for leq_seq in permutations(m) {
        let leq = LinearOrder::from_sequence(&leq_seq).unwrap();
        for pre_seq in permutations(m) {
            let pre = WellPreorder::from_sequence(&pre_seq).unwrap();
            let order = match DevlinShape::new(leq.clone(), pre) {
                Ok(order) => order,
                Err(_) => continue,
            };
            let leaves = order.tree().leaves();
            for perm in &perms {
                let assignment: Vec<Elem> = perm.iter().map(|&i| leaves[i]).collect();
                let edges = g
                    .edges
                    .iter()
                    .map(|&(x, y)| (assignment[x], assignment[y]));
                if let Ok(shape) = SauerShape::new(order.clone(), edges) {
                    codes.insert(shape.canonical_code());
                }
            }
        }
    }
    codes.len()
}

/// All weak orders obtained by inserting the elements `n0..n0+n1` into the
/// base chain of `n0` levels, with no structural constraints: every new
/// level position and every tie is tried. Returns global level vectors.
fn all_insertions(n0: usize, base: &WellPreorder, n1: usize) -> Vec<Vec<usize>> {
    let mut seq: Vec<Elem> = (0..n0).collect();
    seq.sort_by_key(|&e| base.level(e));
    let mut arr: Vec<Vec<Elem>> = seq.into_iter().map(|e| vec![e]).collect();
    let mut out = Vec::new();
    fn rec(arr: &mut Vec<Vec<Elem>>, next: Elem, last: Elem, out: &mut Vec<Vec<usize>>, total: usize) {
        if next == last {
            let mut levels = vec![0usize; total];
            for (lvl, group) in arr.iter().enumerate() {
                for &e in group {
                    levels[e] = lvl;
                }
            }
            out.push(levels);
            return;
        }
        for i in 0..=arr.len() {
            arr.insert(i, vec![next]);
            rec(arr, next + 1, last, out, total);
            arr.remove(i);
        }
        for j in 0..arr.len() {
            arr[j].push(next);
            rec(arr, next + 1, last, out, total);
            arr[j].pop();
        }
    }
    rec(&mut arr, n0, n0 + n1, &mut out, n0 + n1);
    out
}

/// Counts two-sorted hypergraph-shape classes for `h` by exhausting, for
/// each insertion order of the first sort and each labeled copy of `h`, all
/// placements of the second sort: every global weak order, every choice of
/// which second-sort elements carry the pair links, in every pairing.
/// Both linear orders are normalized to the identity; canonical
/// deduplication makes relabelings redundant. Practical only for tiny `h`.
pub fn brute_hyper_oracle(h: &Hypergraph3, reading: TieReading) -> usize {
    assert!(h.n >= 1);
    let n0 = 2 * h.n - 1;
    let leq0 = LinearOrder::identity(n0);
    let perms = permutations(h.n);
    let mut codes: BTreeSet<CanonicalCode> = BTreeSet::new();
    for pre_seq in permutations(n0) {
        let pre0 = WellPreorder::from_sequence(&pre_seq).unwrap();
        let t0 = match tree_from_orders(&leq0, &pre0) {
            Some(t) if t.child_counts().iter().all(|&c| c == 0 || c == 2) => t,
            _ => continue,
        };
        let leaves = t0.leaves();
        for perm in &perms {
            let assignment: Vec<Elem> = perm.iter().map(|&i| leaves[i]).collect();
            let mut back = vec![usize::MAX; n0];
            for (v, &leaf) in assignment.iter().enumerate() {
                back[leaf] = v;
            }
            let has = |a: Elem, b: Elem, c: Elem| h.has_triple(back[a], back[b], back[c]);
            if !hypergraph_compatible(&t0, &pre0, &has) {
                continue;
            }
            let triples: Vec<[Elem; 3]> = h
                .triples
                .iter()
                .map(|&[a, b, c]| {
                    let mut t = [assignment[a], assignment[b], assignment[c]];
                    t.sort_unstable();
                    t
                })
                .collect();
            let vpp = neighbourhood_vertices(&t0, &pre0);
            let k = vpp.len();
            if k == 0 {
                let shape = HyperShape::new(
                    leq0.clone(),
                    LinearOrder::identity(0),
                    pre0.clone(),
                    triples.iter().copied(),
                    [],
                )
                .unwrap();
                if check_def51(&shape, reading).ok {
                    codes.insert(shape.canonical_code());
                }
                continue;
            }
            let n1 = 2 * k - 1;
            let leq1 = LinearOrder::identity(n1);
            let pair_perms = permutations(k);
            for levels in all_insertions(n0, &pre0, n1) {
                let pre = WellPreorder::new(levels).unwrap();
                for_each_subset(n1, k, |carriers| {
                    for pp in &pair_perms {
                        let links: Vec<(Elem, Elem, Elem)> = carriers
                            .iter()
                            .enumerate()
                            .map(|(i, &c)| {
                                let (a, b) = vpp[pp[i]];
                                (a, b, n0 + c)
                            })
                            .collect();
                        let shape = HyperShape::new(
                            leq0.clone(),
                            leq1.clone(),
                            pre.clone(),
                            triples.iter().copied(),
                            links,
                        )
                        .unwrap();
                        if check_def51(&shape, reading).ok {
                            codes.insert(shape.canonical_code());
                        }
                    }
                });
            }
        }
    }
    codes.len()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::{Mode, DEFAULT_CAP};
    use crate::devlin::enumerate_devlin;
    use crate::hyper::enumerate_hyper;
    use crate::sauer::enumerate_sauer;
    use num_bigint::BigUint;

    #[test]
    fn devlin_oracle_small() {
        assert_eq!(brute_devlin_oracle(1), 1);
        assert_eq!(brute_devlin_oracle(2), 2);
        assert_eq!(brute_devlin_oracle(3), 16);
    }

    #[test]
    fn sauer_oracle_matches_enumerator_on_two_vertices() {
        for g in [Graph::empty(2), Graph::complete(2)] {
            let brute = brute_sauer_oracle(&g);
            let cat = enumerate_sauer(&g, Mode::CountOnly, DEFAULT_CAP).unwrap();
            assert_eq!(BigUint::from(brute), cat.count, "graph {}", g.describe());
        }
    }

    #[test]
    fn hyper_oracle_matches_enumerator_on_tiny_inputs() {
        for reading in [TieReading::Literal, TieReading::Strict] {
            let one = Hypergraph3::empty(1);
            assert_eq!(brute_hyper_oracle(&one, reading), 1);
            let cat = enumerate_hyper(&one, Mode::CountOnly, reading, DEFAULT_CAP).unwrap();
            assert_eq!(cat.count, BigUint::from(1u32));

            let two = Hypergraph3::empty(2);
            let brute = brute_hyper_oracle(&two, reading);
            let cat = enumerate_hyper(&two, Mode::CountOnly, reading, DEFAULT_CAP).unwrap();
            assert_eq!(BigUint::from(brute), cat.count, "reading {}", reading.name());
        }
    }

    #[test]
    #[ignore = "minutes-long exhaustive search; covered by the n <= 2 cases"]
    fn hyper_oracle_matches_enumerator_on_one_hyperedge() {
        let h = Hypergraph3::new(3, [[0, 1, 2]]).unwrap();
        for reading in [TieReading::Literal, TieReading::Strict] {
            let brute = brute_hyper_oracle(&h, reading);
            let cat = enumerate_hyper(&h, Mode::CountOnly, reading, DEFAULT_CAP).unwrap();
            assert_eq!(BigUint::from(brute), cat.count, "reading {}", reading.name());
        }
    }
}
