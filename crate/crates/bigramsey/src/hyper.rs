//! 3-uniform hypergraph shapes: hypergraph-tree compatibility, the derived
//! neighbourhood graph on pair-vertices, validation of the two-tree shape
//! conditions (`check_def51`), and enumeration of hypergraph shape classes.

use std::collections::{BTreeMap, BTreeSet};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::catalog::{Catalog, EnumError, Mode};
use crate::devlin::{full_trees, FullTree};
use crate::orders::{Elem, LinearOrder, WellPreorder};
use crate::shape::{CanonicalCode, Family, HyperShape, ShapeError};
use crate::tree::{tree_from_orders, OrderTree};
use crate::util::permutations;

/// A 3-uniform hypergraph on `0..n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Hypergraph3 {
    pub n: usize,
    pub triples: BTreeSet<[Elem; 3]>,
}

impl Hypergraph3 {
    pub fn new(
        n: usize,
        triples: impl IntoIterator<Item = [Elem; 3]>,
    ) -> Result<Self, ShapeError> {
        let mut set = BTreeSet::new();
        for t in triples {
            let mut s = t;
            s.sort_unstable();
            if s[0] == s[1] || s[1] == s[2] {
                return Err(ShapeError::DegenerateTuple);
            }
            if s[2] >= n {
                return Err(ShapeError::BadElement);
            }
            set.insert(s);
        }
        Ok(Hypergraph3 { n, triples: set })
    }

    pub fn empty(n: usize) -> Self {
        Hypergraph3 { n, triples: BTreeSet::new() }
    }

    pub fn complete(n: usize) -> Self {
        let mut triples = BTreeSet::new();
        for a in 0..n {
            for b in a + 1..n {
                for c in b + 1..n {
                    triples.insert([a, b, c]);
                }
            }
        }
        Hypergraph3 { n, triples }
    }

    pub fn has_triple(&self, a: Elem, b: Elem, c: Elem) -> bool {
        let mut s = [a, b, c];
        s.sort_unstable();
        self.triples.contains(&s)
    }

    pub fn describe(&self) -> String {
        let triples: Vec<String> = self
            .triples
            .iter()
            .map(|[a, b, c]| format!("{a}-{b}-{c}"))
            .collect();
        format!("n={};triples={}", self.n, triples.join(","))
    }
}

/// How the projection-monotonicity condition on the two-sorted preorder is
/// read: `Literal` applies it non-strictly (forcing elements with equal
/// projections to be tied), `Strict` applies only the strict form.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum TieReading {
    Literal,
    Strict,
}

impl TieReading {
    pub fn name(self) -> &'static str {
        match self {
            TieReading::Literal => "literal",
            TieReading::Strict => "strict",
        }
    }
}

impl std::str::FromStr for TieReading {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "literal" => Ok(TieReading::Literal),
            "strict" => Ok(TieReading::Strict),
            other => Err(format!("unknown tie reading `{other}`")),
        }
    }
}

/// True iff for every four distinct leaves `a, b, c, d` with
/// `d ⪯ c ⪯ a∧b`, membership of `{a,c,d}` and `{b,c,d}` agrees.
pub fn hypergraph_compatible(
    tree: &OrderTree,
    pre: &WellPreorder,
    has_triple: impl Fn(Elem, Elem, Elem) -> bool,
) -> bool {
    let leaves = tree.leaves();
    for (i, &a) in leaves.iter().enumerate() {
        for &b in &leaves[i + 1..] {
            let meet = tree.meet(a, b);
            for &c in &leaves {
                if c == a || c == b || !pre.le(c, meet) {
                    continue;
                }
                for &d in &leaves {
                    if d == a || d == b || d == c || !pre.le(d, c) {
                        continue;
                    }
                    if has_triple(a, c, d) != has_triple(b, c, d) {
                        return false;
                    }
                }
            }
        }
    }
    true
}

/// Pair-vertices: all `(a, b)` with `a` a leaf, `a ≺ b`, and no strict
/// ancestor `c` of `b` with `a ≺ c ≺ b`. Returned sorted.
pub fn neighbourhood_vertices(tree: &OrderTree, pre: &WellPreorder) -> Vec<(Elem, Elem)> {
    let mut out = Vec::new();
    for a in tree.leaves() {
        for b in 0..tree.n() {
            if !pre.lt(a, b) {
                continue;
            }
            let blocked = (0..tree.n()).any(|c| {
                tree.is_strict_ancestor(c, b) && pre.lt(a, c) && pre.lt(c, b)
            });
            if !blocked {
                out.push((a, b));
            }
        }
    }
    out
}

/// Raised when the leaf descendants of a pair-vertex's second coordinate
/// disagree on a triple; this indicates the input was not compatible, i.e. a
/// caller bug.
#[derive(Debug, Error, PartialEq, Eq)]
#[error("leaf descendants of {d} disagree on triples through {a} and {c}")]
pub struct AgreementViolation {
    pub a: Elem,
    pub c: Elem,
    pub d: Elem,
}

/// The graph transporting the hypergraph to the second tree: vertices are
/// pair-vertices, edges are stored as index pairs into `vertices`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NeighbourhoodGraph {
    pub vertices: Vec<(Elem, Elem)>,
    pub edges: BTreeSet<(usize, usize)>,
}

impl NeighbourhoodGraph {
    pub fn has_edge(&self, i: usize, j: usize) -> bool {
        self.edges.contains(&(i.min(j), i.max(j)))
    }
}

/// Builds the neighbourhood graph: `{(a,b),(c,d)}` with `a ⪯ c` is an edge
/// iff `{a,c,e}` is a hyperedge for the leaves `e` descending from `d`; all
/// such leaves must agree, otherwise `AgreementViolation` is returned.
pub fn neighbourhood_graph(
    tree: &OrderTree,
    pre: &WellPreorder,
    has_triple: impl Fn(Elem, Elem, Elem) -> bool,
) -> Result<NeighbourhoodGraph, AgreementViolation> {
    let vertices = neighbourhood_vertices(tree, pre);
    let leaves = tree.leaves();
    let mut edges = BTreeSet::new();
    for i in 0..vertices.len() {
        for j in i + 1..vertices.len() {
            // Orient so the first coordinates satisfy a ⪯ c.
            let (first, second) = if pre.le(vertices[i].0, vertices[j].0) {
                (vertices[i], vertices[j])
            } else {
                (vertices[j], vertices[i])
            };
            let (a, _) = first;
            let (c, d) = second;
            if a == c {
                continue;
            }
            let mut value: Option<bool> = None;
            for &e in &leaves {
                if e == a || e == c || !tree.is_ancestor(d, e) {
                    continue;
                }
                let h = has_triple(a, c, e);
                match value {
                    None => value = Some(h),
                    Some(prev) if prev != h => {
                        return Err(AgreementViolation { a, c, d });
                    }
                    _ => {}
                }
            }
            if value == Some(true) {
                edges.insert((i, j));
            }
        }
    }
    Ok(NeighbourhoodGraph { vertices, edges })
}

/// Outcome of validating the two-tree shape conditions.
#[derive(Debug, Clone)]
pub struct Def51Report {
    pub ok: bool,
    pub violations: Vec<String>,
}

fn full_binary(t: &OrderTree) -> bool {
    t.child_counts().iter().all(|&c| c == 0 || c == 2)
}

/// Validates the four structural conditions of a two-sorted hypergraph
/// shape: (1) disjoint sorts (guaranteed by the `HyperShape`
/// representation), (2) the first sort is a compatible pair carrying a
/// compatible hypergraph on its leaves, (3) the second sort is a compatible
/// pair whose leaves are exactly the pair-vertices, compatible with the
/// neighbourhood graph, and (4) the projection conditions on ties,
/// monotonicity (per `reading`), and meets.
pub fn check_def51(shape: &HyperShape, reading: TieReading) -> Def51Report {
    let mut violations = Vec::new();
    let n0 = shape.n0();
    let n1 = shape.n1();
    let pre = shape.pre();
    let pre0 = shape.pre_v0();
    let has = |a: Elem, b: Elem, c: Elem| shape.has_triple(a, b, c);

    // (2) First sort.
    let t0 = match tree_from_orders(shape.leq0(), &pre0) {
        Some(t) if full_binary(&t) => Some(t),
        _ => {
            violations.push("(2) first sort is not a compatible pair".into());
            None
        }
    };
    if let Some(t0) = &t0 {
        if shape.triples().iter().any(|t| t.iter().any(|&e| !t0.is_leaf(e))) {
            violations.push("(2) a hyperedge uses a non-leaf vertex".into());
        } else if !hypergraph_compatible(t0, &pre0, has) {
            violations.push("(2) hypergraph is not compatible with the first tree".into());
        }
    }

    // (3) Second sort.
    let mut pair_of: BTreeMap<Elem, (Elem, Elem)> = BTreeMap::new();
    for &(a, b, v) in shape.links() {
        pair_of.insert(v, (a, b));
    }
    let pre1 = shape.pre_v1();
    let t1 = if n1 > 0 {
        match tree_from_orders(shape.leq1(), &pre1) {
            Some(t) if full_binary(&t) => Some(t),
            _ => {
                violations.push("(3) second sort is not a compatible pair".into());
                None
            }
        }
    } else {
        None
    };
    if let Some(t0) = &t0 {
        let vpp: BTreeSet<(Elem, Elem)> =
            neighbourhood_vertices(t0, &pre0).into_iter().collect();
        let link_pairs: BTreeSet<(Elem, Elem)> =
            pair_of.values().copied().collect();
        let links_match = link_pairs == vpp && pair_of.len() == vpp.len();
        if !links_match {
            violations.push("(3) linked pairs are not exactly the pair-vertices".into());
        }
        if n1 == 0 {
            if !vpp.is_empty() {
                violations.push("(3) second sort is empty but pair-vertices exist".into());
            }
        } else if let Some(t1) = &t1 {
            let leaf_set: BTreeSet<Elem> =
                t1.leaves().iter().map(|&l| l + n0).collect();
            let linked: BTreeSet<Elem> = pair_of.keys().copied().collect();
            if leaf_set != linked {
                violations.push(
                    "(3) leaves of the second tree are not exactly the linked pair-vertices"
                        .into(),
                );
            } else if links_match {
                match neighbourhood_graph(t0, &pre0, has) {
                    Ok(g) => {
                        let index: BTreeMap<(Elem, Elem), usize> = g
                            .vertices
                            .iter()
                            .enumerate()
                            .map(|(i, &p)| (p, i))
                            .collect();
                        let compatible =
                            crate::sauer::edges_compatible_with_tree(t1, &pre1, |x, y| {
                                let px = index[&pair_of[&(x + n0)]];
                                let py = index[&pair_of[&(y + n0)]];
                                g.has_edge(px, py)
                            });
                        if !compatible {
                            violations.push(
                                "(3) second tree is not compatible with the neighbourhood graph"
                                    .into(),
                            );
                        }
                    }
                    Err(e) => violations.push(format!("(3) neighbourhood graph undefined: {e}")),
                }
            }
        }
    }

    // (4) Projection conditions. Only meaningful once the first tree exists.
    if let Some(t0) = &t0 {
        let mut proj: Vec<Option<Elem>> = vec![None; n0 + n1];
        for e in 0..n0 {
            if t0.is_leaf(e) {
                proj[e] = Some(e);
            }
        }
        for (&v, &(a, _)) in &pair_of {
            proj[v] = Some(a);
        }
        for x in 0..n0 + n1 {
            for y in x + 1..n0 + n1 {
                if pre.tied(x, y) {
                    match (proj[x], proj[y]) {
                        (Some(px), Some(py)) if px == py => {}
                        _ => violations.push(format!(
                            "(4) tied elements {x} and {y} lack equal defined projections"
                        )),
                    }
                }
            }
        }
        for x in 0..n0 + n1 {
            for y in 0..n0 + n1 {
                if x == y {
                    continue;
                }
                if let (Some(px), Some(py)) = (proj[x], proj[y]) {
                    let bad = match reading {
                        TieReading::Literal => pre.le(px, py) && !pre.le(x, y),
                        TieReading::Strict => pre.lt(px, py) && !pre.lt(x, y),
                    };
                    if bad {
                        violations.push(format!(
                            "(4) projection order of {x} and {y} is not respected"
                        ));
                    }
                }
            }
        }
        if let Some(t1) = &t1 {
            for (&v, &(_, b)) in &pair_of {
                for (&w, &(_, d)) in &pair_of {
                    if v - n0 >= t1.n() || w - n0 >= t1.n() {
                        continue;
                    }
                    let m1 = t1.meet(v - n0, w - n0) + n0;
                    let m0 = t0.meet(b, d);
                    if !pre.lt(m1, m0) {
                        violations.push(format!(
                            "(4) meet of pair-vertices {v} and {w} is not strictly before the meet of {b} and {d}"
                        ));
                    }
                }
            }
        }
    }

    Def51Report { ok: violations.is_empty(), violations }
}

/// Enumerates the global well-preorders over both sorts for one candidate
/// second tree `u` with its leaves already assigned pair-vertices. Placement
/// of the second sort into the first sort's fixed linear order is pruned by
/// the constraints that hold under either tie reading: ancestors precede
/// descendants, ties stay within one projection class, projection order is
/// respected strictly, and each (pair of) pair-vertices' meet lands strictly
/// before the corresponding first-tree meet.
struct Placer<'a> {
    n0: usize,
    pre0: &'a WellPreorder,
    parent: &'a [Option<usize>],
    /// Projection (first coordinate) per second-sort slot; `None` internal.
    proj: Vec<Option<Elem>>,
    /// First-sort elements each slot must strictly precede.
    before: Vec<Vec<Elem>>,
    is_leaf0: Vec<bool>,
    order: Vec<usize>,
    out: Vec<Vec<usize>>,
}

impl Placer<'_> {
    fn proj_of(&self, y: Elem) -> Option<Elem> {
        if y < self.n0 {
            if self.is_leaf0[y] { Some(y) } else { None }
        } else {
            self.proj[y - self.n0]
        }
    }

    fn pos_of(arr: &[Vec<Elem>], e: Elem) -> usize {
        arr.iter().position(|lvl| lvl.contains(&e)).expect("placed element")
    }

    /// Projection-window feasibility of putting a slot with projection `a`
    /// at level index `i` (joining or as a new level; the caller excludes
    /// same-level conflicts via the membership rule).
    fn window_ok(&self, arr: &[Vec<Elem>], a: Elem, i: usize) -> bool {
        for (t, level) in arr.iter().enumerate() {
            for &y in level {
                if let Some(py) = self.proj_of(y) {
                    if py == a {
                        continue;
                    }
                    if self.pre0.lt(py, a) {
                        if t >= i {
                            return false;
                        }
                    } else if t < i {
                        return false;
                    }
                }
            }
        }
        true
    }

    fn bound_ok(&self, arr: &[Vec<Elem>], slot: usize, i: usize, join: bool) -> bool {
        self.before[slot].iter().all(|&b| {
            let pb = Self::pos_of(arr, b);
            if join { i < pb } else { i <= pb }
        })
    }

    fn rec(&mut self, arr: &mut Vec<Vec<Elem>>, k: usize) {
        if k == self.order.len() {
            let mut levels = vec![0usize; self.n0 + self.proj.len()];
            for (lvl, group) in arr.iter().enumerate() {
                for &e in group {
                    levels[e] = lvl;
                }
            }
            self.out.push(levels);
            return;
        }
        let slot = self.order[k];
        let x = self.n0 + slot;
        let lo = match self.parent[slot] {
            Some(p) => Self::pos_of(arr, self.n0 + p) + 1,
            None => 0,
        };
        for i in lo..=arr.len() {
            if !self.bound_ok(arr, slot, i, false) {
                continue;
            }
            if let Some(a) = self.proj[slot] {
                if !self.window_ok(arr, a, i) {
                    continue;
                }
            }
            arr.insert(i, vec![x]);
            self.rec(arr, k + 1);
            arr.remove(i);
        }
        if let Some(a) = self.proj[slot] {
            for j in lo..arr.len() {
                if !arr[j].iter().all(|&m| self.proj_of(m) == Some(a)) {
                    continue;
                }
                if !self.bound_ok(arr, slot, j, true) || !self.window_ok(arr, a, j) {
                    continue;
                }
                arr[j].push(x);
                self.rec(arr, k + 1);
                arr[j].pop();
            }
        }
    }
}

fn slot_depth(u: &FullTree, mut s: usize) -> usize {
    let mut d = 0;
    while let Some(p) = u.parent[s] {
        s = p;
        d += 1;
    }
    d
}

fn slot_meet(u: &FullTree, s: usize, t: usize) -> usize {
    let path = |mut e: usize| {
        let mut p = vec![e];
        while let Some(q) = u.parent[e] {
            e = q;
            p.push(e);
        }
        p.reverse();
        p
    };
    let (ps, pt) = (path(s), path(t));
    let mut m = ps[0];
    for i in 0..ps.len().min(pt.len()) {
        if ps[i] != pt[i] {
            break;
        }
        m = ps[i];
    }
    m
}

fn global_preorders(
    n0: usize,
    pre0: &WellPreorder,
    t0: &OrderTree,
    u: &FullTree,
    pair_slot: &[Option<(Elem, Elem)>],
) -> Vec<Vec<usize>> {
    let n1 = u.size();
    let mut before: Vec<Vec<Elem>> = vec![Vec::new(); n1];
    let leaf_slots: Vec<usize> =
        (0..n1).filter(|&s| pair_slot[s].is_some()).collect();
    for &s in &leaf_slots {
        before[s].push(pair_slot[s].unwrap().1);
    }
    for (i, &s) in leaf_slots.iter().enumerate() {
        for &t in &leaf_slots[i + 1..] {
            let m = slot_meet(u, s, t);
            before[m].push(t0.meet(pair_slot[s].unwrap().1, pair_slot[t].unwrap().1));
        }
    }
    let mut order: Vec<usize> = (0..n1).collect();
    order.sort_by_key(|&s| slot_depth(u, s));
    let mut placer = Placer {
        n0,
        pre0,
        parent: &u.parent,
        proj: pair_slot.iter().map(|p| p.map(|(a, _)| a)).collect(),
        before,
        is_leaf0: (0..n0).map(|e| t0.is_leaf(e)).collect(),
        order,
        out: Vec::new(),
    };
    let mut seq: Vec<Elem> = (0..n0).collect();
    seq.sort_by_key(|&e| pre0.level(e));
    let mut arr: Vec<Vec<Elem>> = seq.into_iter().map(|e| vec![e]).collect();
    placer.rec(&mut arr, 0);
    placer.out
}

/// All valid completions of a fixed first sort into a two-sorted shape:
/// derives the pair-vertices and tries every second tree, pair assignment,
/// and placement, keeping the candidates accepted by [`check_def51`].
/// Returns their canonical codes sorted and deduplicated; empty when the
/// first sort itself is invalid or no completion exists.
pub fn complete_first_sort(
    leq0: &LinearOrder,
    pre0: &WellPreorder,
    triples: &[[Elem; 3]],
    reading: TieReading,
) -> Vec<CanonicalCode> {
    let n0 = leq0.n();
    let t0 = match tree_from_orders(leq0, pre0) {
        Some(t) if full_binary(&t) => t,
        _ => return Vec::new(),
    };
    let has = |a: Elem, b: Elem, c: Elem| {
        let mut s = [a, b, c];
        s.sort_unstable();
        triples.contains(&s)
    };
    if triples.iter().any(|t| t.iter().any(|&e| !t0.is_leaf(e)))
        || !hypergraph_compatible(&t0, pre0, &has)
    {
        return Vec::new();
    }
    let mut codes = BTreeSet::new();
    let vpp = neighbourhood_vertices(&t0, pre0);
    let k = vpp.len();
    if k == 0 {
        let shape = HyperShape::new(
            leq0.clone(),
            LinearOrder::identity(0),
            pre0.clone(),
            triples.iter().copied(),
            [],
        )
        .expect("well-formed by construction");
        if check_def51(&shape, reading).ok {
            codes.insert(shape.canonical_code());
        }
        return codes.into_iter().collect();
    }
    let n1 = 2 * k - 1;
    for u in full_trees(k) {
        let leaf_slots = u.leaf_slots();
        for pb in permutations(k) {
            let mut pair_slot: Vec<Option<(Elem, Elem)>> = vec![None; n1];
            for (i, &ls) in leaf_slots.iter().enumerate() {
                pair_slot[ls] = Some(vpp[pb[i]]);
            }
            for levels in global_preorders(n0, pre0, &t0, &u, &pair_slot) {
                let links = pair_slot
                    .iter()
                    .enumerate()
                    .filter_map(|(s, p)| p.map(|(a, b)| (a, b, n0 + s)));
                let shape = HyperShape::new(
                    leq0.clone(),
                    LinearOrder::identity(n1),
                    WellPreorder::new(levels).unwrap(),
                    triples.iter().copied(),
                    links,
                )
                .expect("well-formed by construction");
                if check_def51(&shape, reading).ok {
                    codes.insert(shape.canonical_code());
                }
            }
        }
    }
    codes.into_iter().collect()
}

/// Enumerates the isomorphism classes of two-sorted hypergraph shapes whose
/// leaf hypergraph is isomorphic to `h`.
pub fn enumerate_hyper(
    h: &Hypergraph3,
    mode: Mode,
    reading: TieReading,
    cap: usize,
) -> Result<Catalog, EnumError> {
    assert!(h.n >= 1);
    let trees = full_trees(h.n);
    let perms = permutations(h.n);
    let per_tree: Vec<BTreeSet<CanonicalCode>> = trees
        .par_iter()
        .map(|tree| {
            let mut codes = BTreeSet::new();
            let n0 = tree.size();
            tree.for_each_extension(&mut |seq| {
                let mut level = vec![0usize; n0];
                for (pos, &slot) in seq.iter().enumerate() {
                    level[slot] = pos;
                }
                let leq0 = LinearOrder::identity(n0);
                let pre0 = WellPreorder::new(level).unwrap();
                let t0 = tree_from_orders(&leq0, &pre0).expect("compatible pair");
                let leaves = t0.leaves();
                for perm in &perms {
                    let assignment: Vec<Elem> = perm.iter().map(|&i| leaves[i]).collect();
                    let mut triples: Vec<[Elem; 3]> = h
                        .triples
                        .iter()
                        .map(|&[a, b, c]| {
                            let mut t = [assignment[a], assignment[b], assignment[c]];
                            t.sort_unstable();
                            t
                        })
                        .collect();
                    triples.sort_unstable();
                    codes.extend(complete_first_sort(&leq0, &pre0, &triples, reading));
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
    let parameter = format!("{};tie-reading={}", h.describe(), reading.name());
    Ok(match mode {
        Mode::Full => Catalog::with_codes(Family::Hyper, parameter, all.into_iter().collect()),
        Mode::CountOnly => Catalog::count_only(
            Family::Hyper,
            parameter,
            num_bigint::BigUint::from(all.len()),
        ),
    })
}
