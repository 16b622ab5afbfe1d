//! Graphviz rendering of shapes: the linear order runs left to right, the
//! insertion order bottom to top, tree edges solid, graph edges dashed,
//! hyperedges as auxiliary nodes, pair links dotted.

use std::path::Path;

use thiserror::Error;

use crate::catalog::Catalog;
use crate::orders::{Elem, WellPreorder};
use crate::shape::{CanonicalCode, DevlinShape, Family, HyperShape, SauerShape, ShapeError};
use crate::tree::{tree_from_orders, OrderTree};

#[derive(Debug, Error)]
pub enum ExportError {
    #[error("{0}")]
    Io(#[from] std::io::Error),
    #[error("undecodable shape code: {0}")]
    BadShape(#[from] ShapeError),
    #[error("catalog has no retained shapes to export")]
    CountOnly,
}

struct DotBuilder {
    lines: Vec<String>,
    /// (name, preorder level, linear position) per node, for rank grouping.
    nodes: Vec<(String, usize, usize)>,
}

impl DotBuilder {
    fn new() -> Self {
        DotBuilder {
            lines: vec![
                "digraph shape {".to_string(),
                "  rankdir=BT;".to_string(),
                "  node [shape=circle fontsize=10];".to_string(),
                "  edge [arrowhead=none];".to_string(),
            ],
            nodes: Vec::new(),
        }
    }

    fn node(&mut self, name: &str, label: &str, level: usize, position: usize) {
        self.lines.push(format!("  {name} [label=\"{label}\"];"));
        self.nodes.push((name.to_string(), level, position));
    }

    fn edge(&mut self, a: &str, b: &str, attrs: &str) {
        self.lines.push(format!("  {a} -> {b} [{attrs}];"));
    }

    fn tree_edges(&mut self, tree: &OrderTree, name: impl Fn(Elem) -> String) {
        for e in 0..tree.n() {
            if let Some(p) = tree.parent(e) {
                self.edge(&name(p), &name(e), "style=solid");
            }
        }
    }

    fn finish(mut self) -> String {
        let mut levels: Vec<usize> = self.nodes.iter().map(|(_, l, _)| *l).collect();
        levels.sort_unstable();
        levels.dedup();
        let mut reps = Vec::new();
        for &level in &levels {
            let mut members: Vec<&(String, usize, usize)> =
                self.nodes.iter().filter(|(_, l, _)| *l == level).collect();
            // Listing nodes in linear-order position nudges the layout into
            // the left-to-right convention.
            members.sort_by_key(|(_, _, pos)| *pos);
            let names: Vec<String> =
                members.iter().map(|(n, _, _)| n.clone()).collect();
            self.lines.push(format!("  {{ rank=same; {}; }}", names.join("; ")));
            reps.push(names[0].clone());
        }
        for pair in reps.windows(2) {
            self.lines
                .push(format!("  {} -> {} [style=invis];", pair[0], pair[1]));
        }
        self.lines.push("}".to_string());
        self.lines.join("\n") + "\n"
    }
}

fn devlin_dot(shape: &DevlinShape) -> String {
    let mut b = DotBuilder::new();
    let norm = shape.pre().normalized_levels();
    for e in 0..shape.n() {
        b.node(&format!("v{e}"), &e.to_string(), norm[e], shape.leq().rank(e));
    }
    b.tree_edges(&shape.tree(), |e| format!("v{e}"));
    b.finish()
}

fn sauer_dot(shape: &SauerShape) -> String {
    let mut b = DotBuilder::new();
    let order = shape.order();
    let norm = order.pre().normalized_levels();
    for e in 0..order.n() {
        b.node(&format!("v{e}"), &e.to_string(), norm[e], order.leq().rank(e));
    }
    b.tree_edges(&order.tree(), |e| format!("v{e}"));
    for &(a, c) in shape.edges() {
        b.edge(
            &format!("v{a}"),
            &format!("v{c}"),
            "style=dashed constraint=false",
        );
    }
    b.finish()
}

fn hyper_dot(shape: &HyperShape) -> String {
    let mut b = DotBuilder::new();
    let n0 = shape.n0();
    let norm = shape.pre().normalized_levels();
    let name = |e: Elem| {
        if e < n0 { format!("a{e}") } else { format!("b{}", e - n0) }
    };
    for e in 0..n0 {
        b.node(&name(e), &e.to_string(), norm[e], shape.leq0().rank(e));
    }
    for e in n0..n0 + shape.n1() {
        // Offset the second sort to the right of the first.
        b.node(&name(e), &format!("({})", e - n0), norm[e], n0 + shape.leq1().rank(e - n0));
    }
    let t0 = tree_from_orders(shape.leq0(), &shape.pre_v0()).expect("valid first sort");
    b.tree_edges(&t0, name);
    if shape.n1() > 0 {
        let t1 = tree_from_orders(shape.leq1(), &shape.pre_v1()).expect("valid second sort");
        b.tree_edges(&t1, |e| name(e + n0));
    }
    for (i, [x, y, z]) in shape.triples().iter().enumerate() {
        let h = format!("h{i}");
        b.lines
            .push(format!("  {h} [shape=point width=0.08 label=\"\"];"));
        for e in [x, y, z] {
            b.edge(&h, &name(*e), "style=dashed constraint=false");
        }
    }
    for &(x, y, v) in shape.links() {
        b.edge(&name(v), &name(x), "style=dotted constraint=false");
        b.edge(&name(v), &name(y), "style=dotted constraint=false");
    }
    b.finish()
}

/// Renders one canonical code as a DOT document.
pub fn shape_to_dot(code: &CanonicalCode) -> Result<String, ShapeError> {
    Ok(match code.family()? {
        Family::Devlin => devlin_dot(&DevlinShape::from_code(code)?),
        Family::Sauer => sauer_dot(&SauerShape::from_code(code)?),
        Family::Hyper => hyper_dot(&HyperShape::from_code(code)?),
    })
}

/// Writes one DOT file per retained shape into `dir`; returns the number of
/// files written.
pub fn export_catalog(catalog: &Catalog, dir: &Path) -> Result<usize, ExportError> {
    let codes = catalog.codes.as_ref().ok_or(ExportError::CountOnly)?;
    std::fs::create_dir_all(dir)?;
    for (i, code) in codes.iter().enumerate() {
        let dot = shape_to_dot(code)?;
        std::fs::write(dir.join(format!("shape-{i:05}.dot")), dot)?;
    }
    Ok(codes.len())
}

/// Rebuilds the preorder of a decoded shape; exposed for tests.
pub fn decoded_levels(pre: &WellPreorder) -> Vec<usize> {
    pre.normalized_levels()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::{Mode, DEFAULT_CAP};
    use crate::devlin::enumerate_devlin;

    #[test]
    fn exports_every_devlin_shape() {
        let catalog = enumerate_devlin(3, Mode::Full, DEFAULT_CAP).unwrap();
        let dir = tempfile::tempdir().unwrap();
        let written = export_catalog(&catalog, dir.path()).unwrap();
        assert_eq!(written, 16);
        let text =
            std::fs::read_to_string(dir.path().join("shape-00000.dot")).unwrap();
        assert!(text.starts_with("digraph shape {"));
        assert!(text.contains("rank=same"));
    }

    #[test]
    fn count_only_catalogs_cannot_be_exported() {
        let catalog = enumerate_devlin(3, Mode::CountOnly, DEFAULT_CAP).unwrap();
        let dir = tempfile::tempdir().unwrap();
        assert!(matches!(
            export_catalog(&catalog, dir.path()),
            Err(ExportError::CountOnly)
        ));
    }
}
