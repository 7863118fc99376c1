use std::collections::HashSet;
use std::fmt::{self, Write};

use super::{Plugging, ScopeError, ScopeGraph};
use crate::atom::natural_cmp;
use crate::vit::{Pred, Vit};
use crate::Atom;

/// A fully scoped reading.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ScopedTree {
    pub label: Atom,
    /// The hole this subtree was plugged into, if any.
    pub hole: Option<Atom>,
    /// Semantics predicates carrying this label, in source order.
    pub predicates: Vec<Pred>,
    pub children: Vec<ScopedTree>,
}

impl ScopedTree {
    /// Every predicate in the tree, depth first.
    pub fn predicates(&self) -> Vec<&Pred> {
        let mut out: Vec<&Pred> = self.predicates.iter().collect();
        for c in &self.children {
            out.extend(c.predicates());
        }
        out
    }

    fn render(&self, depth: usize, out: &mut String) {
        let indent = "  ".repeat(depth);
        let preds: Vec<String> = self.predicates.iter().map(Pred::to_string).collect();
        let body = if preds.is_empty() { "(group)".to_string() } else { preds.join(" ") };
        match &self.hole {
            Some(h) => writeln!(out, "{indent}{h} -> {}: {body}", self.label),
            None => writeln!(out, "{indent}{}: {body}", self.label),
        }
        .unwrap();
        for c in &self.children {
            c.render(depth + 1, out);
        }
    }
}

/// Indented outline, one label per line.
impl fmt::Display for ScopedTree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut out = String::new();
        self.render(0, &mut out);
        f.write_str(&out)
    }
}

/// Builds the reading a plugging selects. Fails unless the plugging is
/// tree-shaped and reaches every label.
pub fn build_tree(vit: &Vit, graph: &ScopeGraph, plugging: &Plugging) -> Result<ScopedTree, ScopeError> {
    let not_a_tree = || ScopeError::NotATree(plugging.clone());
    let mut seen: HashSet<Atom> = HashSet::new();

    fn node(
        label: &Atom,
        hole: Option<&Atom>,
        vit: &Vit,
        graph: &ScopeGraph,
        plugging: &Plugging,
        seen: &mut HashSet<Atom>,
    ) -> Option<ScopedTree> {
        if !seen.insert(label.clone()) {
            return None;
        }
        let predicates = vit.semantics.iter().filter(|p| p.label() == Some(label)).cloned().collect();
        let mut inner: Vec<&Atom> = graph.containment.get(label).into_iter().flatten().collect();
        inner.sort_by(|a, b| natural_cmp(a.text(), b.text()));
        let mut children = Vec::new();
        for n in inner {
            match plugging.assignment.get(n) {
                Some(l) => {
                    if !seen.insert(n.clone()) {
                        return None;
                    }
                    children.push(node(l, Some(n), vit, graph, plugging, seen)?);
                }
                None if graph.holes.contains(n) => return None,
                None => children.push(node(n, None, vit, graph, plugging, seen)?),
            }
        }
        if *label == graph.root_label {
            for a in &graph.anchored {
                children.push(node(a, None, vit, graph, plugging, seen)?);
            }
        }
        Some(ScopedTree {
            label: label.clone(),
            hole: hole.cloned(),
            predicates,
            children,
        })
    }

    let tree = node(&graph.root_label, None, vit, graph, plugging, &mut seen).ok_or_else(not_a_tree)?;
    let covered = tree.predicates().len();
    if covered != vit.semantics.len() {
        return Err(not_a_tree());
    }
    Ok(tree)
}
