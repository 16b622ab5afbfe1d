//! Shape structures and their canonical codes.
//!
//! A shape is a finite structure whose isomorphism class contributes one unit
//! to a big Ramsey degree. Because every shape carries a linear order per
//! sort, shapes are rigid: normalizing element identifiers by order rank
//! leaves no automorphism, so a direct serialization of the normalized
//! structure is a canonical code. Code equality coincides with isomorphism.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::orders::{Elem, LinearOrder, WellPreorder};
use crate::tree::{is_compatible_pair, tree_from_orders, OrderTree};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ShapeError {
    #[error("orders have mismatched ground sets")]
    GroundMismatch,
    #[error("insertion order must be linear for this family")]
    PreorderNotLinear,
    #[error("orders are not a compatible pair")]
    NotCompatiblePair,
    #[error("relation references an element outside the expected sort")]
    BadElement,
    #[error("graph is not compatible with the tree")]
    GraphIncompatible,
    #[error("relation tuple has repeated entries")]
    DegenerateTuple,
    #[error("pair-vertex links are not a bijection")]
    BadLinks,
    #[error("the two sorts overlap")]
    SortsOverlap,
    #[error("malformed canonical code")]
    BadCode,
}

/// Families of shape structures.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Family {
    Devlin,
    Sauer,
    Hyper,
}

impl Family {
    pub fn name(self) -> &'static str {
        match self {
            Family::Devlin => "devlin",
            Family::Sauer => "sauer",
            Family::Hyper => "hyper",
        }
    }
}

impl std::str::FromStr for Family {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "devlin" => Ok(Family::Devlin),
            "sauer" => Ok(Family::Sauer),
            "hyper" => Ok(Family::Hyper),
            other => Err(format!("unknown family `{other}`")),
        }
    }
}

/// Byte string identifying an isomorphism class of shapes.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CanonicalCode(Vec<u8>);

impl CanonicalCode {
    pub fn bytes(&self) -> &[u8] {
        &self.0
    }

    pub fn to_hex(&self) -> String {
        hex::encode(&self.0)
    }

    pub fn from_hex(s: &str) -> Result<Self, ShapeError> {
        hex::decode(s).map(CanonicalCode).map_err(|_| ShapeError::BadCode)
    }

    pub fn family(&self) -> Result<Family, ShapeError> {
        match self.0.first() {
            Some(b'D') => Ok(Family::Devlin),
            Some(b'S') => Ok(Family::Sauer),
            Some(b'H') => Ok(Family::Hyper),
            _ => Err(ShapeError::BadCode),
        }
    }
}

fn push_section(out: &mut Vec<u8>, entries: impl IntoIterator<Item = Vec<u8>>) {
    let items: Vec<Vec<u8>> = entries.into_iter().collect();
    out.extend_from_slice(&(items.len() as u32).to_le_bytes());
    for item in items {
        out.extend_from_slice(&item);
    }
}

/// A compatible pair of linear orders: the shapes of suborders of the
/// rationals.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DevlinShape {
    leq: LinearOrder,
    pre: WellPreorder,
}

impl DevlinShape {
    pub fn new(leq: LinearOrder, pre: WellPreorder) -> Result<Self, ShapeError> {
        if leq.n() != pre.n() {
            return Err(ShapeError::GroundMismatch);
        }
        if !pre.is_linear() {
            return Err(ShapeError::PreorderNotLinear);
        }
        if !is_compatible_pair(&leq, &pre) {
            return Err(ShapeError::NotCompatiblePair);
        }
        Ok(DevlinShape { leq, pre })
    }

    pub fn n(&self) -> usize {
        self.leq.n()
    }

    pub fn leq(&self) -> &LinearOrder {
        &self.leq
    }

    pub fn pre(&self) -> &WellPreorder {
        &self.pre
    }

    pub fn tree(&self) -> OrderTree {
        tree_from_orders(&self.leq, &self.pre).expect("validated at construction")
    }

    /// Insertion levels listed by `<=` position, densely renumbered. Two
    /// shapes are isomorphic iff these agree.
    fn normal_levels(&self) -> Vec<usize> {
        let norm = self.pre.normalized_levels();
        self.leq.sequence().into_iter().map(|e| norm[e]).collect()
    }

    pub fn canonical_code(&self) -> CanonicalCode {
        let mut out = vec![b'D'];
        push_section(
            &mut out,
            self.normal_levels().into_iter().map(|l| vec![l as u8]),
        );
        CanonicalCode(out)
    }

    /// Decodes a code back into the normalized representative shape.
    pub fn from_code(code: &CanonicalCode) -> Result<Self, ShapeError> {
        let (shape, rest) = Self::parse(code.bytes())?;
        if rest.is_empty() { Ok(shape) } else { Err(ShapeError::BadCode) }
    }

    fn parse(bytes: &[u8]) -> Result<(Self, &[u8]), ShapeError> {
        let rest = bytes.strip_prefix(b"D").ok_or(ShapeError::BadCode)?;
        let (levels, rest) = parse_section(rest, 1)?;
        let levels: Vec<usize> = levels.iter().map(|b| b[0] as usize).collect();
        let n = levels.len();
        let leq = LinearOrder::identity(n);
        let pre = WellPreorder::new(levels).map_err(|_| ShapeError::BadCode)?;
        let shape = DevlinShape::new(leq, pre).map_err(|_| ShapeError::BadCode)?;
        Ok((shape, rest))
    }
}

fn parse_section(bytes: &[u8], width: usize) -> Result<(Vec<Vec<u8>>, &[u8]), ShapeError> {
    if bytes.len() < 4 {
        return Err(ShapeError::BadCode);
    }
    let count = u32::from_le_bytes(bytes[..4].try_into().unwrap()) as usize;
    let total = count.checked_mul(width).ok_or(ShapeError::BadCode)?;
    let rest = &bytes[4..];
    if rest.len() < total {
        return Err(ShapeError::BadCode);
    }
    let entries = rest[..total].chunks(width).map(|c| c.to_vec()).collect();
    Ok((entries, &rest[total..]))
}

/// A Devlin shape annotated with a graph on the tree's leaves.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SauerShape {
    order: DevlinShape,
    edges: BTreeSet<(Elem, Elem)>,
}

impl SauerShape {
    pub fn new(
        order: DevlinShape,
        edges: impl IntoIterator<Item = (Elem, Elem)>,
    ) -> Result<Self, ShapeError> {
        let tree = order.tree();
        let mut set = BTreeSet::new();
        for (a, b) in edges {
            if a == b {
                return Err(ShapeError::DegenerateTuple);
            }
            if a >= order.n() || b >= order.n() || !tree.is_leaf(a) || !tree.is_leaf(b) {
                return Err(ShapeError::BadElement);
            }
            set.insert((a.min(b), a.max(b)));
        }
        let shape = SauerShape { order, edges: set };
        if !shape.graph_compatible(&tree) {
            return Err(ShapeError::GraphIncompatible);
        }
        Ok(shape)
    }

    pub fn order(&self) -> &DevlinShape {
        &self.order
    }

    pub fn edges(&self) -> &BTreeSet<(Elem, Elem)> {
        &self.edges
    }

    pub fn has_edge(&self, a: Elem, b: Elem) -> bool {
        self.edges.contains(&(a.min(b), a.max(b)))
    }

    fn graph_compatible(&self, tree: &OrderTree) -> bool {
        crate::sauer::edges_compatible_with_tree(tree, self.order.pre(), |a, b| {
            self.has_edge(a, b)
        })
    }

    pub fn canonical_code(&self) -> CanonicalCode {
        let mut out = vec![b'S'];
        push_section(
            &mut out,
            self.order.normal_levels().into_iter().map(|l| vec![l as u8]),
        );
        let rank = |e: Elem| self.order.leq.rank(e) as u8;
        let mut edges: Vec<(u8, u8)> = self
            .edges
            .iter()
            .map(|&(a, b)| {
                let (x, y) = (rank(a), rank(b));
                (x.min(y), x.max(y))
            })
            .collect();
        edges.sort_unstable();
        push_section(&mut out, edges.into_iter().map(|(a, b)| vec![a, b]));
        CanonicalCode(out)
    }

    pub fn from_code(code: &CanonicalCode) -> Result<Self, ShapeError> {
        let bytes = code.bytes();
        let rest = bytes.strip_prefix(b"S").ok_or(ShapeError::BadCode)?;
        let (levels, rest) = parse_section(rest, 1)?;
        let levels: Vec<usize> = levels.iter().map(|b| b[0] as usize).collect();
        let n = levels.len();
        let order = DevlinShape::new(
            LinearOrder::identity(n),
            WellPreorder::new(levels).map_err(|_| ShapeError::BadCode)?,
        )
        .map_err(|_| ShapeError::BadCode)?;
        let (edges, rest) = parse_section(rest, 2)?;
        if !rest.is_empty() {
            return Err(ShapeError::BadCode);
        }
        SauerShape::new(
            order,
            edges.into_iter().map(|e| (e[0] as Elem, e[1] as Elem)),
        )
        .map_err(|_| ShapeError::BadCode)
    }
}

/// A two-sorted shape for 3-uniform hypergraphs: the first tree carries the
/// hypergraph on its leaves, the second tree carries the derived
/// neighbourhood graph, and links tie each second-tree leaf to the pair of
/// first-tree elements it represents.
///
/// Elements `0..n0` form the first sort, `n0..n0+n1` the second. The
/// structural conditions beyond basic well-formedness are checked by
/// [`crate::hyper::check_def51`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HyperShape {
    n0: usize,
    n1: usize,
    leq0: LinearOrder,
    leq1: LinearOrder,
    pre: WellPreorder,
    triples: BTreeSet<[Elem; 3]>,
    links: BTreeSet<(Elem, Elem, Elem)>,
}

impl HyperShape {
    /// `links` entries are `(a, b, v)`: leaf `a` and element `b` of the
    /// first sort, pair-vertex `v` of the second (global id).
    pub fn new(
        leq0: LinearOrder,
        leq1: LinearOrder,
        pre: WellPreorder,
        triples: impl IntoIterator<Item = [Elem; 3]>,
        links: impl IntoIterator<Item = (Elem, Elem, Elem)>,
    ) -> Result<Self, ShapeError> {
        let (n0, n1) = (leq0.n(), leq1.n());
        if pre.n() != n0 + n1 {
            return Err(ShapeError::GroundMismatch);
        }
        let mut tset = BTreeSet::new();
        for t in triples {
            let mut s = t;
            s.sort_unstable();
            if s[0] == s[1] || s[1] == s[2] {
                return Err(ShapeError::DegenerateTuple);
            }
            if s[2] >= n0 {
                return Err(ShapeError::BadElement);
            }
            tset.insert(s);
        }
        let mut lset = BTreeSet::new();
        let mut used_v = BTreeSet::new();
        let mut used_pair = BTreeSet::new();
        for (a, b, v) in links {
            if a >= n0 || b >= n0 || v < n0 || v >= n0 + n1 {
                return Err(ShapeError::BadElement);
            }
            if a == b {
                return Err(ShapeError::DegenerateTuple);
            }
            if !used_v.insert(v) || !used_pair.insert((a, b)) {
                return Err(ShapeError::BadLinks);
            }
            lset.insert((a, b, v));
        }
        Ok(HyperShape { n0, n1, leq0, leq1, pre, triples: tset, links: lset })
    }

    /// Constructor over explicit element id lists, so that overlapping sorts
    /// can be rejected rather than being unrepresentable.
    pub fn from_parts(
        v0: &[Elem],
        v1: &[Elem],
        leq0: LinearOrder,
        leq1: LinearOrder,
        pre: WellPreorder,
        triples: impl IntoIterator<Item = [Elem; 3]>,
        links: impl IntoIterator<Item = (Elem, Elem, Elem)>,
    ) -> Result<Self, ShapeError> {
        let set0: BTreeSet<Elem> = v0.iter().copied().collect();
        if v1.iter().any(|e| set0.contains(e)) {
            return Err(ShapeError::SortsOverlap);
        }
        let set1: BTreeSet<Elem> = v1.iter().copied().collect();
        if set0.len() != v0.len() || set1.len() != v1.len() {
            return Err(ShapeError::BadElement);
        }
        // Remap to the dense layout: v0 positions first, then v1 positions.
        let idx = |e: Elem| -> Result<Elem, ShapeError> {
            v0.iter()
                .position(|&x| x == e)
                .or_else(|| v1.iter().position(|&x| x == e).map(|i| v0.len() + i))
                .ok_or(ShapeError::BadElement)
        };
        let pre = WellPreorder::new(
            v0.iter()
                .chain(v1.iter())
                .map(|&e| pre.level(e))
                .collect(),
        )
        .map_err(|_| ShapeError::BadElement)?;
        let triples = triples
            .into_iter()
            .map(|[a, b, c]| Ok([idx(a)?, idx(b)?, idx(c)?]))
            .collect::<Result<Vec<_>, ShapeError>>()?;
        let links = links
            .into_iter()
            .map(|(a, b, v)| Ok((idx(a)?, idx(b)?, idx(v)?)))
            .collect::<Result<Vec<_>, ShapeError>>()?;
        Self::new(leq0, leq1, pre, triples, links)
    }

    pub fn n0(&self) -> usize {
        self.n0
    }

    pub fn n1(&self) -> usize {
        self.n1
    }

    pub fn leq0(&self) -> &LinearOrder {
        &self.leq0
    }

    pub fn leq1(&self) -> &LinearOrder {
        &self.leq1
    }

    /// The global well-preorder over both sorts.
    pub fn pre(&self) -> &WellPreorder {
        &self.pre
    }

    pub fn pre_v0(&self) -> WellPreorder {
        let v0: Vec<Elem> = (0..self.n0).collect();
        self.pre.restrict(&v0)
    }

    pub fn pre_v1(&self) -> WellPreorder {
        let v1: Vec<Elem> = (self.n0..self.n0 + self.n1).collect();
        self.pre.restrict(&v1)
    }

    pub fn triples(&self) -> &BTreeSet<[Elem; 3]> {
        &self.triples
    }

    pub fn has_triple(&self, a: Elem, b: Elem, c: Elem) -> bool {
        let mut s = [a, b, c];
        s.sort_unstable();
        self.triples.contains(&s)
    }

    pub fn links(&self) -> &BTreeSet<(Elem, Elem, Elem)> {
        &self.links
    }

    pub fn canonical_code(&self) -> CanonicalCode {
        // Relabel each sort by its linear-order rank; the preorder levels and
        // the relations become the normalized structure.
        let p = |e: Elem| -> u8 {
            if e < self.n0 {
                self.leq0.rank(e) as u8
            } else {
                (self.n0 + self.leq1.rank(e - self.n0)) as u8
            }
        };
        let norm = self.pre.normalized_levels();
        let mut levels = vec![0u8; self.n0 + self.n1];
        for e in 0..self.n0 + self.n1 {
            levels[p(e) as usize] = norm[e] as u8;
        }
        let mut out = vec![b'H'];
        out.extend_from_slice(&(self.n0 as u32).to_le_bytes());
        out.extend_from_slice(&(self.n1 as u32).to_le_bytes());
        push_section(&mut out, levels.into_iter().map(|l| vec![l]));
        let mut triples: Vec<[u8; 3]> = self
            .triples
            .iter()
            .map(|&[a, b, c]| {
                let mut t = [p(a), p(b), p(c)];
                t.sort_unstable();
                t
            })
            .collect();
        triples.sort_unstable();
        push_section(&mut out, triples.into_iter().map(|t| t.to_vec()));
        // Links are serialized as unordered triples; orientation is
        // recoverable since `a ≺ b` within the first sort.
        let mut links: Vec<[u8; 3]> = self
            .links
            .iter()
            .map(|&(a, b, v)| {
                let mut t = [p(a), p(b), p(v)];
                t.sort_unstable();
                t
            })
            .collect();
        links.sort_unstable();
        push_section(&mut out, links.into_iter().map(|t| t.to_vec()));
        CanonicalCode(out)
    }

    pub fn from_code(code: &CanonicalCode) -> Result<Self, ShapeError> {
        let bytes = code.bytes();
        let rest = bytes.strip_prefix(b"H").ok_or(ShapeError::BadCode)?;
        if rest.len() < 8 {
            return Err(ShapeError::BadCode);
        }
        let n0 = u32::from_le_bytes(rest[..4].try_into().unwrap()) as usize;
        let n1 = u32::from_le_bytes(rest[4..8].try_into().unwrap()) as usize;
        let (levels, rest) = parse_section(&rest[8..], 1)?;
        if levels.len() != n0 + n1 {
            return Err(ShapeError::BadCode);
        }
        let pre = WellPreorder::new(levels.iter().map(|b| b[0] as usize).collect())
            .map_err(|_| ShapeError::BadCode)?;
        let (triples, rest) = parse_section(rest, 3)?;
        let (links, rest) = parse_section(rest, 3)?;
        if !rest.is_empty() {
            return Err(ShapeError::BadCode);
        }
        let links = links
            .into_iter()
            .map(|l| {
                let (x, y, v) = (l[0] as Elem, l[1] as Elem, l[2] as Elem);
                if x >= n0 || y >= n0 || v < n0 {
                    return Err(ShapeError::BadCode);
                }
                // `a` is the ⪯-earlier first-sort element of the pair.
                let (a, b) = if pre.le(x, y) { (x, y) } else { (y, x) };
                Ok((a, b, v))
            })
            .collect::<Result<Vec<_>, _>>()?;
        HyperShape::new(
            LinearOrder::identity(n0),
            LinearOrder::identity(n1),
            pre,
            triples
                .into_iter()
                .map(|t| [t[0] as Elem, t[1] as Elem, t[2] as Elem]),
            links,
        )
        .map_err(|_| ShapeError::BadCode)
    }
}
