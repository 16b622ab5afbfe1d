//! Graph-tree compatibility and enumeration of graph shapes.

use std::collections::BTreeSet;

use rayon::prelude::*;

use crate::catalog::{Catalog, EnumError, Mode};
use crate::orders::{Elem, LinearOrder, WellPreorder};
use crate::shape::{CanonicalCode, DevlinShape, Family, SauerShape, ShapeError};
use crate::tree::{tree_from_orders, OrderTree};
use crate::util::permutations;

/// A finite simple graph on `0..n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    pub n: usize,
    pub edges: BTreeSet<(Elem, Elem)>,
}

impl Graph {
    pub fn new(n: usize, edges: impl IntoIterator<Item = (Elem, Elem)>) -> Result<Self, ShapeError> {
        let mut set = BTreeSet::new();
        for (a, b) in edges {
            if a == b {
                return Err(ShapeError::DegenerateTuple);
            }
            if a >= n || b >= n {
                return Err(ShapeError::BadElement);
            }
            set.insert((a.min(b), a.max(b)));
        }
        Ok(Graph { n, edges: set })
    }

    pub fn empty(n: usize) -> Self {
        Graph { n, edges: BTreeSet::new() }
    }

    pub fn complete(n: usize) -> Self {
        let mut edges = BTreeSet::new();
        for a in 0..n {
            for b in a + 1..n {
                edges.insert((a, b));
            }
        }
        Graph { n, edges }
    }

    pub fn has_edge(&self, a: Elem, b: Elem) -> bool {
        self.edges.contains(&(a.min(b), a.max(b)))
    }

    pub fn describe(&self) -> String {
        let edges: Vec<String> =
            self.edges.iter().map(|(a, b)| format!("{a}-{b}")).collect();
        format!("n={};edges={}", self.n, edges.join(","))
    }
}

/// Core compatibility predicate: for every triple of distinct leaves
/// `a, b, c` with `c ⪯ a∧b`, the edges `{a,c}` and `{b,c}` agree.
pub fn edges_compatible_with_tree(
    tree: &OrderTree,
    pre: &WellPreorder,
    edge: impl Fn(Elem, Elem) -> bool,
) -> bool {
    let leaves = tree.leaves();
    for (i, &a) in leaves.iter().enumerate() {
        for &b in &leaves[i + 1..] {
            let meet = tree.meet(a, b);
            for &c in &leaves {
                if c == a || c == b {
                    continue;
                }
                if pre.le(c, meet) && edge(a, c) != edge(b, c) {
                    return false;
                }
            }
        }
    }
    true
}

/// Checks compatibility of `g` placed onto the tree's leaves via
/// `assignment` (graph vertex `i` -> leaf `assignment[i]`). Rejects
/// assignments that are not bijections onto the leaf set.
pub fn graph_compatible(
    tree: &OrderTree,
    pre: &WellPreorder,
    g: &Graph,
    assignment: &[Elem],
) -> Result<bool, ShapeError> {
    let leaves: BTreeSet<Elem> = tree.leaves().into_iter().collect();
    let image: BTreeSet<Elem> = assignment.iter().copied().collect();
    if assignment.len() != g.n || image.len() != g.n || image != leaves {
        return Err(ShapeError::BadElement);
    }
    let mut back = vec![usize::MAX; tree.n()];
    for (v, &leaf) in assignment.iter().enumerate() {
        back[leaf] = v;
    }
    Ok(edges_compatible_with_tree(tree, pre, |a, b| g.has_edge(back[a], back[b])))
}

/// Enumerates the shape classes whose leaf graph is isomorphic to `g`: all
/// (tree, insertion order) pairs crossed with all placements of `g` on the
/// leaves, filtered by compatibility and deduplicated by canonical code.
pub fn enumerate_sauer(g: &Graph, mode: Mode, cap: usize) -> Result<Catalog, EnumError> {
    assert!(g.n >= 1);
    let trees = crate::devlin::full_trees(g.n);
    let perms = permutations(g.n);
    let per_tree: Vec<BTreeSet<CanonicalCode>> = trees
        .par_iter()
        .map(|tree| {
            let mut codes = BTreeSet::new();
            let size = tree.size();
            tree.for_each_extension(&mut |seq| {
                let mut level = vec![0usize; size];
                for (pos, &slot) in seq.iter().enumerate() {
                    level[slot] = pos;
                }
                let leq = LinearOrder::identity(size);
                let pre = WellPreorder::new(level).unwrap();
                let t = tree_from_orders(&leq, &pre).expect("compatible pair");
                let leaves = t.leaves();
                for perm in &perms {
                    let assignment: Vec<Elem> = perm.iter().map(|&i| leaves[i]).collect();
                    if !graph_compatible(&t, &pre, g, &assignment).expect("leaf bijection") {
                        continue;
                    }
                    let order = DevlinShape::new(leq.clone(), pre.clone()).unwrap();
                    let mut back = vec![usize::MAX; size];
                    for (v, &leaf) in assignment.iter().enumerate() {
                        back[leaf] = v;
                    }
                    let edges = g
                        .edges
                        .iter()
                        .map(|&(x, y)| (assignment[x], assignment[y]));
                    let shape = SauerShape::new(order, edges).expect("compatible by filter");
                    codes.insert(shape.canonical_code());
                }
            });
            codes
        })
        .collect();
    let mut all = BTreeSet::new();
    for set in per_tree {
        all.extend(set);
    }
    if matches!(mode, Mode::Full) && all.len() > cap {
        return Err(EnumError::ResourceCap { cap });
    }
    let parameter = g.describe();
    Ok(match mode {
        Mode::Full => Catalog::with_codes(Family::Sauer, parameter, all.into_iter().collect()),
        Mode::CountOnly => {
            Catalog::count_only(Family::Sauer, parameter, num_bigint::BigUint::from(all.len()))
        }
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::DEFAULT_CAP;

    fn five_node_tree(order: &[Elem]) -> (OrderTree, WellPreorder) {
        // Root 1 with children 0 and 3; 3 has children 2 and 4.
        let leq = LinearOrder::identity(5);
        let pre = WellPreorder::from_sequence(order).unwrap();
        let t = tree_from_orders(&leq, &pre).unwrap();
        assert_eq!(t.leaves(), vec![0, 2, 4]);
        (t, pre)
    }

    #[test]
    fn two_leaf_trees_are_always_compatible() {
        let leq = LinearOrder::identity(3);
        let pre = WellPreorder::from_sequence(&[1, 0, 2]).unwrap();
        let t = tree_from_orders(&leq, &pre).unwrap();
        let g = Graph::new(2, [(0, 1)]).unwrap();
        assert!(graph_compatible(&t, &pre, &g, &[0, 2]).unwrap());
        let g = Graph::empty(2);
        assert!(graph_compatible(&t, &pre, &g, &[2, 0]).unwrap());
    }

    #[test]
    fn path_on_early_leaf_is_incompatible() {
        // Leaf 0 precedes meet(2,4)=3 and sees 2 but not 4.
        let (t, pre) = five_node_tree(&[1, 0, 3, 2, 4]);
        let g = Graph::new(3, [(0, 1), (1, 2)]).unwrap();
        // Vertices 0,1,2 of the path onto leaves 0,2,4.
        assert!(!graph_compatible(&t, &pre, &g, &[0, 2, 4]).unwrap());
    }

    #[test]
    fn late_leaves_make_the_path_compatible() {
        let (t, pre) = five_node_tree(&[1, 3, 0, 2, 4]);
        let g = Graph::new(3, [(0, 1), (1, 2)]).unwrap();
        assert!(graph_compatible(&t, &pre, &g, &[0, 2, 4]).unwrap());
    }

    #[test]
    fn rejects_non_leaf_assignment() {
        let (t, pre) = five_node_tree(&[1, 0, 3, 2, 4]);
        let g = Graph::empty(3);
        assert!(graph_compatible(&t, &pre, &g, &[0, 1, 2]).is_err());
    }

    #[test]
    fn tiny_catalogs() {
        let one = enumerate_sauer(&Graph::empty(1), Mode::Full, DEFAULT_CAP).unwrap();
        assert_eq!(one.codes.unwrap().len(), 1);
        let edge = enumerate_sauer(&Graph::new(2, [(0, 1)]).unwrap(), Mode::Full, DEFAULT_CAP)
            .unwrap();
        assert_eq!(edge.codes.unwrap().len(), 2);
        let iso = enumerate_sauer(&Graph::empty(2), Mode::Full, DEFAULT_CAP).unwrap();
        assert_eq!(iso.codes.unwrap().len(), 2);
    }
}
