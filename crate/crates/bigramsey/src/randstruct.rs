//! Deterministic finite approximations of the universal graph and the
//! universal 3-uniform hypergraph, their trees of types, and extraction of
//! the shape realized by a finite vertex subset.

use std::cmp::Ordering;
use std::collections::{BTreeMap, BTreeSet};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::hyper::{complete_first_sort, Hypergraph3, TieReading};
use crate::orders::{Elem, LinearOrder, WellPreorder};
use crate::sauer::Graph;
use crate::shape::{CanonicalCode, DevlinShape, Family, SauerShape};
use crate::util::{binomial, for_each_subset};

/// The bit-predicate graph: `{i, j}` with `i < j` is an edge iff bit `i` of
/// `j` is set. Satisfies the finite extension property: the vertex whose
/// expansion has exactly the bits of `U` set is adjacent to all of `U` and
/// none of `V`.
pub fn rado_edge(i: usize, j: usize) -> bool {
    let (lo, hi) = if i < j { (i, j) } else { (j, i) };
    i != j && lo < 64 && (hi as u64 >> lo) & 1 == 1
}

pub fn rado_graph(n: usize) -> Graph {
    assert!(n >= 1);
    let mut edges = BTreeSet::new();
    for j in 0..n {
        for i in 0..j {
            if rado_edge(i, j) {
                edges.insert((i, j));
            }
        }
    }
    Graph { n, edges }
}

/// Index of the pair `(i, j)` with `i < j` in colexicographic order.
pub fn pair_index(i: usize, j: usize) -> usize {
    debug_assert!(i < j);
    j * (j - 1) / 2 + i
}

/// The bit-predicate 3-uniform hypergraph: for `i < j < k` the triple is
/// present iff bit `pair_index(i, j)` of `k` is set.
pub fn hyper_triple(a: usize, b: usize, c: usize) -> bool {
    let mut s = [a, b, c];
    s.sort_unstable();
    if s[0] == s[1] || s[1] == s[2] {
        return false;
    }
    let p = pair_index(s[0], s[1]);
    p < 64 && (s[2] as u64 >> p) & 1 == 1
}

pub fn random_hyper3(n: usize) -> Hypergraph3 {
    assert!(n >= 1);
    let mut triples = BTreeSet::new();
    for k in 0..n {
        for j in 0..k {
            for i in 0..j {
                if hyper_triple(i, j, k) {
                    triples.insert([i, j, k]);
                }
            }
        }
    }
    Hypergraph3 { n, triples }
}

/// A finite structure with its enumeration well-order (the vertex index).
#[derive(Debug, Clone)]
pub enum EnumeratedStructure {
    Graph(Graph),
    Hyper(Hypergraph3),
}

impl EnumeratedStructure {
    pub fn n(&self) -> usize {
        match self {
            EnumeratedStructure::Graph(g) => g.n,
            EnumeratedStructure::Hyper(h) => h.n,
        }
    }

    /// The behaviour vector of `v` toward `s`: adjacency per element for
    /// graphs, hyperedge membership per pair within `s` for hypergraphs.
    pub fn behaviour(&self, v: usize, s: &[usize]) -> Vec<bool> {
        match self {
            EnumeratedStructure::Graph(g) => s.iter().map(|&x| g.has_edge(v, x)).collect(),
            EnumeratedStructure::Hyper(h) => {
                let mut out = Vec::new();
                for (i, &x) in s.iter().enumerate() {
                    for &y in &s[i + 1..] {
                        out.push(h.has_triple(v, x, y));
                    }
                }
                out
            }
        }
    }

    /// Partition of the vertices outside `s` by identical behaviour.
    pub fn s_types(&self, s: &[usize]) -> Vec<Vec<usize>> {
        let mut classes: BTreeMap<Vec<bool>, Vec<usize>> = BTreeMap::new();
        for v in 0..self.n() {
            if s.contains(&v) {
                continue;
            }
            classes.entry(self.behaviour(v, s)).or_default().push(v);
        }
        classes.into_values().collect()
    }
}

/// One S-type class for the initial segment of size `segment`.
#[derive(Debug, Clone)]
pub struct TypeNode {
    pub segment: usize,
    pub behaviour: Vec<bool>,
    pub members: Vec<usize>,
}

/// The tree of S-types over initial segments of size `0..=depth`, ordered
/// by reverse inclusion of the classes.
#[derive(Debug, Clone)]
pub struct TypeTree {
    pub levels: Vec<Vec<TypeNode>>,
}

impl TypeTree {
    pub fn level_sizes(&self) -> Vec<usize> {
        self.levels.iter().map(|l| l.len()).collect()
    }

    /// The inclusion-minimal node containing `v`, as `(level, index)`: the
    /// deepest level whose segment excludes `v`.
    pub fn vertex_node(&self, v: usize) -> (usize, usize) {
        let level = v.min(self.levels.len() - 1);
        let hits: Vec<usize> = self.levels[level]
            .iter()
            .enumerate()
            .filter(|(_, node)| node.members.contains(&v))
            .map(|(i, _)| i)
            .collect();
        assert_eq!(hits.len(), 1, "vertex belongs to exactly one class");
        (level, hits[0])
    }
}

pub fn tree_of_types(s: &EnumeratedStructure, depth: usize) -> TypeTree {
    assert!(depth < s.n());
    let mut levels = Vec::with_capacity(depth + 1);
    for m in 0..=depth {
        let segment: Vec<usize> = (0..m).collect();
        let level = s
            .s_types(&segment)
            .into_iter()
            .map(|members| TypeNode {
                segment: m,
                behaviour: s.behaviour(members[0], &segment),
                members,
            })
            .collect();
        levels.push(level);
    }
    TypeTree { levels }
}

/// A finite binary string.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct BitString(pub Vec<bool>);

impl BitString {
    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_prefix_of(&self, other: &BitString) -> bool {
        other.0.len() >= self.0.len() && other.0[..self.0.len()] == self.0[..]
    }

    pub fn lcp_len(&self, other: &BitString) -> usize {
        self.0
            .iter()
            .zip(&other.0)
            .take_while(|(a, b)| a == b)
            .count()
    }

    /// In-order tree position: a node sits above its 0-extensions and below
    /// its 1-extensions, so `p0w < p < p1w`; otherwise the first differing
    /// bit decides. Equal strings compare equal.
    pub fn in_order(&self, other: &BitString) -> Ordering {
        let l = self.lcp_len(other);
        match (self.0.get(l), other.0.get(l)) {
            (Some(a), Some(b)) => a.cmp(b),
            (None, Some(b)) => {
                if *b {
                    Ordering::Less
                } else {
                    Ordering::Greater
                }
            }
            (Some(a), None) => {
                if *a {
                    Ordering::Greater
                } else {
                    Ordering::Less
                }
            }
            (None, None) => Ordering::Equal,
        }
    }
}

/// Behaviour string of vertex `v` of the bit-predicate graph toward its
/// predecessors: bit `i` records adjacency to `i`.
pub fn graph_string(v: usize) -> BitString {
    BitString((0..v).map(|i| rado_edge(i, v)).collect())
}

/// Behaviour string of vertex `v` of the bit-predicate hypergraph: one bit
/// per pair of predecessors, in colexicographic pair order.
pub fn hyper_string(v: usize) -> BitString {
    let mut bits = Vec::new();
    for j in 1..v {
        for i in 0..j {
            bits.push(hyper_triple(i, j, v));
        }
    }
    BitString(bits)
}

/// A node of a tree of types: the class defined by agreement with `bits`
/// over the initial segment of size `level`.
#[derive(Debug, Clone, PartialEq, Eq)]
struct Node {
    level: usize,
    bits: BitString,
}

impl Node {
    fn is_ancestor_of(&self, other: &Node, seg: impl Fn(usize) -> usize) -> bool {
        self.level <= other.level
            && self.bits.len() == seg(self.level)
            && self.bits.is_prefix_of(&other.bits)
    }

    fn meet(&self, other: &Node, seg: impl Fn(usize) -> usize) -> Node {
        let l = self.bits.lcp_len(&other.bits);
        let mut m = self.level.min(other.level);
        while seg(m) > l {
            m -= 1;
        }
        Node { level: m, bits: BitString(self.bits.0[..seg(m)].to_vec()) }
    }
}

/// Closes the given nodes under meets and derives the pair of orders: `<=`
/// is the in-order position, the insertion order is (level, then string).
/// Returns the well-preorder on the closure (elements identified with their
/// in-order rank) and the ranks of the input nodes, or `None` when two
/// inputs coincide, are tree-comparable, or the closure degenerates.
fn close_and_order(
    inputs: &[Node],
    seg: impl Fn(usize) -> usize + Copy,
) -> Option<(WellPreorder, Vec<usize>)> {
    for (i, a) in inputs.iter().enumerate() {
        for b in &inputs[i + 1..] {
            if a.is_ancestor_of(b, seg) || b.is_ancestor_of(a, seg) {
                return None;
            }
        }
    }
    let mut closure: Vec<Node> = inputs.to_vec();
    for (i, a) in inputs.iter().enumerate() {
        for b in &inputs[i + 1..] {
            let m = a.meet(b, seg);
            if !closure.contains(&m) {
                closure.push(m);
            }
        }
    }
    // Meets of meets are again meets of inputs on a tree, but close
    // defensively until stable.
    loop {
        let mut added = Vec::new();
        for (i, a) in closure.iter().enumerate() {
            for b in &closure[i + 1..] {
                let m = a.meet(b, seg);
                if !closure.contains(&m) && !added.contains(&m) {
                    added.push(m);
                }
            }
        }
        if added.is_empty() {
            break;
        }
        closure.extend(added);
    }
    if closure.len() > crate::orders::MAX_GROUND {
        return None;
    }
    // Distinct raw strings are required for the in-order to be linear.
    for (i, a) in closure.iter().enumerate() {
        for b in &closure[i + 1..] {
            if a.bits == b.bits {
                return None;
            }
        }
    }
    closure.sort_by(|a, b| a.bits.in_order(&b.bits));
    let mut by_pre: Vec<usize> = (0..closure.len()).collect();
    by_pre.sort_by(|&x, &y| {
        (closure[x].level, &closure[x].bits.0).cmp(&(closure[y].level, &closure[y].bits.0))
    });
    let mut level = vec![0usize; closure.len()];
    for (pos, &e) in by_pre.iter().enumerate() {
        level[e] = pos;
    }
    let pre = WellPreorder::new(level).ok()?;
    let ranks = inputs
        .iter()
        .map(|node| closure.iter().position(|c| c == node).unwrap())
        .collect();
    Some((pre, ranks))
}

fn order_nodes(subset: &[usize]) -> Vec<Node> {
    subset
        .iter()
        .map(|&v| Node { level: v, bits: graph_string(v) })
        .collect()
}

/// Shape of a subset of the bit-predicate linear order (the in-order on
/// behaviour strings); `None` when the extraction degenerates.
pub fn shape_of_subset_order(subset: &[usize]) -> Option<DevlinShape> {
    let (pre, ranks) = close_and_order(&order_nodes(subset), |m| m)?;
    let shape = DevlinShape::new(LinearOrder::identity(pre.n()), pre).ok()?;
    let leaves: BTreeSet<Elem> = shape.tree().leaves().into_iter().collect();
    let rankset: BTreeSet<Elem> = ranks.iter().copied().collect();
    if leaves != rankset {
        return None;
    }
    Some(shape)
}

/// Shape of a subset of the bit-predicate graph; `None` when the extraction
/// degenerates or fails compatibility validation.
pub fn shape_of_subset_graph(subset: &[usize]) -> Option<SauerShape> {
    let (pre, ranks) = close_and_order(&order_nodes(subset), |m| m)?;
    let order = DevlinShape::new(LinearOrder::identity(pre.n()), pre).ok()?;
    let leaves: BTreeSet<Elem> = order.tree().leaves().into_iter().collect();
    let rankset: BTreeSet<Elem> = ranks.iter().copied().collect();
    if leaves != rankset {
        return None;
    }
    let mut edges = Vec::new();
    for (i, &u) in subset.iter().enumerate() {
        for (j, &v) in subset.iter().enumerate().skip(i + 1) {
            if rado_edge(u, v) {
                edges.push((ranks[i], ranks[j]));
            }
        }
    }
    SauerShape::new(order, edges).ok()
}

/// Canonical code of the two-sorted shape realized by a subset of the
/// bit-predicate hypergraph: the first sort is read off the type strings;
/// the second sort is recovered by completing the first sort and taking the
/// least valid completion under the literal tie reading. `None` when the
/// extraction degenerates or no completion validates.
pub fn shape_of_subset_hyper(subset: &[usize]) -> Option<CanonicalCode> {
    let nodes: Vec<Node> = subset
        .iter()
        .map(|&v| Node { level: v, bits: hyper_string(v) })
        .collect();
    let seg = |m: usize| if m < 2 { 0 } else { m * (m - 1) / 2 };
    let (pre, ranks) = close_and_order(&nodes, seg)?;
    let mut triples = Vec::new();
    for (i, &u) in subset.iter().enumerate() {
        for (j, &v) in subset.iter().enumerate().skip(i + 1) {
            for (k, &w) in subset.iter().enumerate().skip(j + 1) {
                if hyper_triple(u, v, w) {
                    let mut t = [ranks[i], ranks[j], ranks[k]];
                    t.sort_unstable();
                    triples.push(t);
                }
            }
        }
    }
    triples.sort_unstable();
    let leq0 = LinearOrder::identity(pre.n());
    complete_first_sort(&leq0, &pre, &triples, TieReading::Literal)
        .into_iter()
        .next()
}

/// Survey outcome: the realized codes plus bookkeeping on coverage.
#[derive(Debug, Clone)]
pub struct RealizedReport {
    pub family: Family,
    pub codes: BTreeSet<CanonicalCode>,
    pub surveyed: u64,
    pub discarded: u64,
    pub truncated: bool,
}

fn survey_subset(family: Family, subset: &[usize]) -> Option<CanonicalCode> {
    match family {
        Family::Devlin => shape_of_subset_order(subset).map(|s| s.canonical_code()),
        Family::Sauer => shape_of_subset_graph(subset).map(|s| s.canonical_code()),
        Family::Hyper => shape_of_subset_hyper(subset),
    }
}

/// Collects the canonical codes of the shapes realized by `n`-subsets of
/// the size-`size` approximation: exhaustively when the subset count fits
/// the budget, otherwise by uniform sampling seeded with `seed`.
pub fn realized_shapes(
    family: Family,
    n: usize,
    size: usize,
    seed: u64,
    budget: u64,
) -> RealizedReport {
    assert!(n >= 1 && size >= n);
    let total = binomial(size as u64, n as u64);
    if total <= budget {
        let (codes, surveyed, discarded) = (0..size)
            .into_par_iter()
            .map(|first| {
                let mut codes = BTreeSet::new();
                let mut surveyed = 0u64;
                let mut discarded = 0u64;
                let rest = size - first - 1;
                for_each_subset(rest, n - 1, |tail| {
                    let mut subset = Vec::with_capacity(n);
                    subset.push(first);
                    subset.extend(tail.iter().map(|&t| first + 1 + t));
                    surveyed += 1;
                    match survey_subset(family, &subset) {
                        Some(code) => {
                            codes.insert(code);
                        }
                        None => discarded += 1,
                    }
                });
                (codes, surveyed, discarded)
            })
            .reduce(
                || (BTreeSet::new(), 0, 0),
                |(mut c1, s1, d1), (c2, s2, d2)| {
                    c1.extend(c2);
                    (c1, s1 + s2, d1 + d2)
                },
            );
        RealizedReport { family, codes, surveyed, discarded, truncated: false }
    } else {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut codes = BTreeSet::new();
        let mut discarded = 0u64;
        for _ in 0..budget {
            let mut picks = BTreeSet::new();
            while picks.len() < n {
                picks.insert(rng.gen_range(0..size));
            }
            let subset: Vec<usize> = picks.into_iter().collect();
            match survey_subset(family, &subset) {
                Some(code) => {
                    codes.insert(code);
                }
                None => discarded += 1,
            }
        }
        RealizedReport { family, codes, surveyed: budget, discarded, truncated: true }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rado_small_edges() {
        assert_eq!(rado_graph(2).edges.len(), 1);
        let g = rado_graph(4);
        let expect: BTreeSet<(usize, usize)> =
            [(0, 1), (1, 2), (0, 3), (1, 3)].into_iter().collect();
        assert_eq!(g.edges, expect);
    }

    #[test]
    fn rado_extension_property_on_small_sets() {
        // The vertex with exactly the bits of U set is adjacent to all of U
        // and none of V, for disjoint U, V inside {0..5}.
        let u = [0usize, 2, 4];
        let v = [1usize, 3];
        let witness: usize = u.iter().map(|&i| 1usize << i).sum();
        for &a in &u {
            assert!(rado_edge(a, witness));
        }
        for &b in &v {
            assert!(!rado_edge(b, witness));
        }
    }

    #[test]
    fn hyper_predicate_small_cases() {
        // p(0,1) = 0 and bit 0 of 2 is 0.
        assert!(!hyper_triple(0, 1, 2));
        assert!(!hyper_triple(1, 1, 2));
        // p(0,1) = 0 and bit 0 of 3 is 1.
        assert!(hyper_triple(0, 1, 3));
        // Witness completing the pair {0,1}: any k with bit 0 set.
        assert!(hyper_triple(0, 1, 5));
    }

    #[test]
    fn s_type_counts_for_graphs() {
        for n in 0..=4 {
            let g = EnumeratedStructure::Graph(rado_graph((1 << n) + n));
            let s: Vec<usize> = (0..n).collect();
            assert_eq!(g.s_types(&s).len(), 1 << n, "n={n}");
        }
    }

    #[test]
    fn empty_segment_is_one_class() {
        let g = EnumeratedStructure::Graph(rado_graph(10));
        assert_eq!(g.s_types(&[]).len(), 1);
    }

    #[test]
    fn hyper_type_tree_level_sizes() {
        let h = EnumeratedStructure::Hyper(random_hyper3(80));
        let t = tree_of_types(&h, 4);
        assert_eq!(t.level_sizes(), vec![1, 1, 2, 8, 64]);
    }

    #[test]
    fn vertex_nodes_are_unique() {
        let g = EnumeratedStructure::Graph(rado_graph(20));
        let t = tree_of_types(&g, 4);
        for v in 0..20 {
            let (level, idx) = t.vertex_node(v);
            assert_eq!(level, v.min(4));
            assert!(t.levels[level][idx].members.contains(&v));
        }
    }

    #[test]
    fn in_order_padding_convention() {
        let p = BitString(vec![true]);
        let p0 = BitString(vec![true, false]);
        let p1 = BitString(vec![true, true]);
        assert_eq!(p0.in_order(&p), Ordering::Less);
        assert_eq!(p.in_order(&p1), Ordering::Less);
        assert_eq!(p.in_order(&p), Ordering::Equal);
    }

    #[test]
    fn two_point_order_shapes() {
        // {1, 2}: strings "1" and "01" with meet ""; the meet is inserted
        // first and the subtree is the 3-element balanced shape.
        let shape = shape_of_subset_order(&[1, 2]).unwrap();
        assert_eq!(shape.n(), 3);
        assert_eq!(shape.tree().leaves().len(), 2);
        // {1, 3}: "1" is a prefix of "11" -- degenerate.
        assert!(shape_of_subset_order(&[1, 3]).is_none());
    }

    #[test]
    fn single_vertex_shapes() {
        assert_eq!(shape_of_subset_order(&[1]).unwrap().n(), 1);
        let s = shape_of_subset_graph(&[2]).unwrap();
        assert_eq!(s.order().n(), 1);
        assert!(shape_of_subset_hyper(&[2]).is_some());
    }

    #[test]
    fn realized_devlin_pairs() {
        let report = realized_shapes(Family::Devlin, 2, 16, 0, u64::MAX);
        assert_eq!(report.codes.len(), 2);
        assert!(!report.truncated);
        assert_eq!(report.surveyed, 120);
    }

    #[test]
    fn sampling_is_reproducible() {
        let a = realized_shapes(Family::Devlin, 2, 64, 7, 50);
        let b = realized_shapes(Family::Devlin, 2, 64, 7, 50);
        assert!(a.truncated);
        assert_eq!(a.codes, b.codes);
        assert_eq!(a.discarded, b.discarded);
    }
}
