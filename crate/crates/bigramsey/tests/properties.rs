//! Randomized property tests for the core invariants.

use std::collections::BTreeMap;

use proptest::prelude::*;

use bigramsey::io::CatalogFile;
use bigramsey::tree::bst_insertion_parents;
use bigramsey::{
    enumerate_devlin, enumerate_sauer, tree_from_orders, CanonicalCode, DevlinShape,
    Graph, LinearOrder, Mode, SauerShape, WellPreorder, DEFAULT_CAP,
};

fn order_pair(max_n: usize) -> impl Strategy<Value = (LinearOrder, WellPreorder)> {
    (1..=max_n)
        .prop_flat_map(|n| {
            let perm = Just((0..n).collect::<Vec<usize>>()).prop_shuffle();
            (perm.clone(), perm)
        })
        .prop_map(|(leq, pre)| {
            (
                LinearOrder::from_sequence(&leq).unwrap(),
                WellPreorder::from_sequence(&pre).unwrap(),
            )
        })
}

proptest! {
    #[test]
    fn tree_matches_bst_insertion((leq, pre) in order_pair(14)) {
        let tree = tree_from_orders(&leq, &pre).expect("linear insertion orders define a tree");
        let expect = bst_insertion_parents(&leq, &pre);
        let got: Vec<Option<usize>> = (0..leq.n()).map(|e| tree.parent(e)).collect();
        prop_assert_eq!(got, expect);
    }

    #[test]
    fn meet_laws_hold((leq, pre) in order_pair(10)) {
        let tree = tree_from_orders(&leq, &pre).unwrap();
        let n = tree.n();
        for a in 0..n {
            prop_assert_eq!(tree.meet(a, a), a);
            for b in 0..n {
                let ab = tree.meet(a, b);
                prop_assert_eq!(ab, tree.meet(b, a));
                prop_assert!(tree.is_ancestor(ab, a));
                prop_assert!(tree.is_ancestor(ab, b));
            }
        }
    }

    #[test]
    fn order_codes_are_relabeling_invariant(
        (leq, pre, raw_sigma) in (1usize..=9).prop_flat_map(|n| {
            let perm = || Just((0..n).collect::<Vec<usize>>()).prop_shuffle();
            (perm(), perm(), perm())
        }).prop_map(|(leq, pre, sigma)| (
            LinearOrder::from_sequence(&leq).unwrap(),
            WellPreorder::from_sequence(&pre).unwrap(),
            sigma,
        )),
    ) {
        let shape = match DevlinShape::new(leq.clone(), pre.clone()) {
            Ok(s) => s,
            Err(_) => return Ok(()),
        };
        let seq: Vec<usize> = leq.sequence().iter().map(|&e| raw_sigma[e]).collect();
        let mut level = vec![0usize; leq.n()];
        for e in 0..leq.n() {
            level[raw_sigma[e]] = pre.level(e);
        }
        let relabeled = DevlinShape::new(
            LinearOrder::from_sequence(&seq).unwrap(),
            WellPreorder::new(level).unwrap(),
        ).unwrap();
        prop_assert_eq!(relabeled.canonical_code(), shape.canonical_code());
    }

    #[test]
    fn order_codes_round_trip((leq, pre) in order_pair(9)) {
        let shape = match DevlinShape::new(leq, pre) {
            Ok(s) => s,
            Err(_) => return Ok(()),
        };
        let code = shape.canonical_code();
        let decoded = DevlinShape::from_code(&code).unwrap();
        prop_assert_eq!(decoded.canonical_code(), code.clone());
        let hex = code.to_hex();
        prop_assert_eq!(CanonicalCode::from_hex(&hex).unwrap(), code);
    }

    #[test]
    fn graph_codes_round_trip((leq, pre) in order_pair(7), edge_bits in any::<u16>()) {
        let order = match DevlinShape::new(leq, pre) {
            Ok(s) => s,
            Err(_) => return Ok(()),
        };
        let leaves = order.tree().leaves();
        let mut edges = Vec::new();
        let mut bit = 0;
        for i in 0..leaves.len() {
            for j in i + 1..leaves.len() {
                if edge_bits >> (bit % 16) & 1 == 1 {
                    edges.push((leaves[i], leaves[j]));
                }
                bit += 1;
            }
        }
        let shape = match SauerShape::new(order, edges) {
            Ok(s) => s,
            Err(_) => return Ok(()),
        };
        let code = shape.canonical_code();
        let decoded = SauerShape::from_code(&code).unwrap();
        prop_assert_eq!(decoded.canonical_code(), code);
    }

    #[test]
    fn catalog_files_round_trip(n in 1usize..=4) {
        let catalog = enumerate_devlin(n, Mode::Full, DEFAULT_CAP).unwrap();
        let file = CatalogFile::from_catalog(&catalog, BTreeMap::new());
        let json = serde_json::to_string(&file).unwrap();
        let back: CatalogFile = serde_json::from_str(&json).unwrap();
        let restored = back.to_catalog().unwrap();
        prop_assert_eq!(restored.count, catalog.count);
        prop_assert_eq!(restored.codes, catalog.codes);
    }

    #[test]
    fn sauer_count_is_within_bounds(edge_bits in 0u8..8) {
        // Every 3-vertex graph catalog lies between the tangent number (the
        // vacuous lower bound) and all-orders-times-all-edge-patterns.
        let edges = [(0usize, 1usize), (1, 2), (0, 2)];
        let chosen: Vec<(usize, usize)> = edges
            .iter()
            .enumerate()
            .filter(|(i, _)| edge_bits >> i & 1 == 1)
            .map(|(_, e)| *e)
            .collect();
        let g = Graph::new(3, chosen).unwrap();
        let count = enumerate_sauer(&g, Mode::CountOnly, DEFAULT_CAP).unwrap().count;
        prop_assert!(count >= 16u32.into());
        prop_assert!(count <= (16u32 * 8).into());
    }
}
