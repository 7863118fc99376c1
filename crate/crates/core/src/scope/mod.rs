//! Underspecified scope: holes, floating labels, and the pluggings that
//! turn them into readings.
//!
//! Operators such as `decl` or a quantifier introduce holes; labels that
//! nothing contains float and must each be plugged into exactly one hole.
//! A plugging is admissible when containment plus the plug edges form a
//! tree under the main label and every `leq(l,h)` puts `l` strictly below
//! `h`.

mod tree;

use std::collections::{BTreeMap, BTreeSet, HashMap, HashSet};
use std::fmt;

use thiserror::Error;

use crate::atom::natural_cmp;
use crate::semclass::{conventional_kind, ArgKind, Catalog};
use crate::vit::{Term, Vit};
use crate::Atom;

pub use tree::{build_tree, ScopedTree};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ScopeError {
    #[error("cannot tell the kind of argument {position} of {predicate}")]
    UnknownKind { predicate: String, position: usize },
    #[error("{holes} hole(s) but {labels} floating label(s)")]
    CardinalityMismatch { holes: usize, labels: usize },
    #[error("hole `{0}` has no ccom_plug")]
    IncompleteDefault(Atom),
    #[error("plugging {0} does not yield a tree")]
    NotATree(Plugging),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ScopeGraph {
    /// In natural identifier order.
    pub holes: Vec<Atom>,
    /// In natural identifier order.
    pub floating_labels: Vec<Atom>,
    pub root_label: Atom,
    /// Label → the holes and labels it immediately contains.
    pub containment: BTreeMap<Atom, BTreeSet<Atom>>,
    pub leq_constraints: Vec<(Atom, Atom)>,
    /// Top-level labels that neither hold a hole nor take part in any scope
    /// constraint (e.g. a pronoun). They sit directly under the root in
    /// every reading instead of being plugged.
    pub anchored: Vec<Atom>,
}

fn natural_sort(items: &mut [Atom]) {
    items.sort_by(|a, b| natural_cmp(a.text(), b.text()));
}

impl ScopeGraph {
    /// Every node of the dominance structure.
    pub fn nodes(&self) -> BTreeSet<Atom> {
        let mut nodes: BTreeSet<Atom> = self.holes.iter().chain(&self.floating_labels).chain(&self.anchored).cloned().collect();
        nodes.insert(self.root_label.clone());
        for (owner, inner) in &self.containment {
            nodes.insert(owner.clone());
            nodes.extend(inner.iter().cloned());
        }
        nodes
    }
}

/// Reads the scope structure off an interface term. Argument kinds come
/// from the catalog where it knows the predicate, else from identifier
/// shape.
pub fn build_scope_graph(vit: &Vit, catalog: &Catalog) -> Result<ScopeGraph, ScopeError> {
    let mut containment: BTreeMap<Atom, BTreeSet<Atom>> = BTreeMap::new();
    let mut labels: Vec<Atom> = Vec::new();
    let mut holes: Vec<Atom> = Vec::new();
    for p in &vit.semantics {
        let label = p.label().expect("semantics predicates are labelled").clone();
        let known = catalog.known_pattern(p.name()).filter(|k| k.arity() == p.arity());
        let inner = containment.entry(label.clone()).or_default();
        for (i, arg) in p.args.iter().enumerate().skip(1) {
            let kind = match &known {
                Some(k) => Some(k.arg_kinds[i]),
                None => conventional_kind(arg),
            };
            let Some(kind) = kind else {
                return Err(ScopeError::UnknownKind {
                    predicate: p.to_string(),
                    position: i + 1,
                });
            };
            match (kind, arg.as_atom()) {
                (ArgKind::Hole, Some(h)) => {
                    inner.insert(h.clone());
                    if !holes.contains(h) {
                        holes.push(h.clone());
                    }
                }
                (k, Some(l)) if k.is_label() => {
                    inner.insert(l.clone());
                }
                _ => {}
            }
        }
        if !labels.contains(&label) {
            labels.push(label);
        }
    }
    for g in vit.groups.iter().filter(|g| g.name() == "sem_group") {
        let (Some(label), Some(members)) = (g.label(), g.args.get(1).and_then(Term::as_list)) else { continue };
        let inner = containment.entry(label.clone()).or_default();
        inner.extend(members.iter().filter_map(Term::as_atom).cloned());
        if !labels.contains(label) {
            labels.push(label.clone());
        }
    }
    containment.retain(|_, inner| !inner.is_empty());

    let mut leq = Vec::new();
    let mut constrained: HashSet<Atom> = HashSet::new();
    for c in &vit.scope {
        let (Some(a), Some(b)) = (c.arg_atom(0), c.arg_atom(1)) else { continue };
        match c.name() {
            "leq" => {
                let pair = (a.clone(), b.clone());
                if !leq.contains(&pair) {
                    leq.push(pair);
                }
                constrained.insert(a.clone());
                constrained.insert(b.clone());
            }
            "ccom_plug" => {
                constrained.insert(b.clone());
            }
            _ => {}
        }
    }

    let contained: HashSet<&Atom> = containment.values().flatten().collect();
    let root = vit.main_label.clone();
    let top_level: Vec<Atom> = labels
        .iter()
        .filter(|l| **l != root && !contained.contains(l))
        .cloned()
        .collect();
    let holds_hole = |l: &Atom| {
        let mut stack = vec![l];
        let mut seen = HashSet::new();
        while let Some(n) = stack.pop() {
            if !seen.insert(n) {
                continue;
            }
            for inner in containment.get(n).into_iter().flatten() {
                if holes.contains(inner) {
                    return true;
                }
                stack.push(inner);
            }
        }
        false
    };
    let (mut anchored, mut floating): (Vec<Atom>, Vec<Atom>) = top_level
        .into_iter()
        .partition(|l| !constrained.contains(l) && !holds_hole(l));
    natural_sort(&mut holes);
    natural_sort(&mut floating);
    natural_sort(&mut anchored);
    Ok(ScopeGraph {
        holes,
        floating_labels: floating,
        root_label: root,
        containment,
        leq_constraints: leq,
        anchored,
    })
}

/// One reading: which label goes into which hole.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Plugging {
    pub assignment: BTreeMap<Atom, Atom>,
}

impl Plugging {
    /// The assignment in natural hole order (`h2` before `h10`).
    pub fn pairs(&self) -> Vec<(&Atom, &Atom)> {
        let mut pairs: Vec<_> = self.assignment.iter().collect();
        pairs.sort_by(|a, b| natural_cmp(a.0.text(), b.0.text()).then_with(|| natural_cmp(a.1.text(), b.1.text())));
        pairs
    }

    pub fn get(&self, hole: &str) -> Option<&Atom> {
        self.assignment.get(hole)
    }
}

impl<const N: usize> From<[(&str, &str); N]> for Plugging {
    fn from(pairs: [(&str, &str); N]) -> Plugging {
        Plugging {
            assignment: pairs.iter().map(|(h, l)| (Atom::new(*h), Atom::new(*l))).collect(),
        }
    }
}

impl PartialOrd for Plugging {
    fn partial_cmp(&self, other: &Plugging) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

/// Lexicographic over the natural-order pairs.
impl Ord for Plugging {
    fn cmp(&self, other: &Plugging) -> std::cmp::Ordering {
        let key = |p: &Plugging| {
            p.pairs()
                .into_iter()
                .map(|(h, l)| (h.text().to_string(), l.text().to_string()))
                .collect::<Vec<_>>()
        };
        let (a, b) = (key(self), key(other));
        for ((ha, la), (hb, lb)) in a.iter().zip(&b) {
            let o = natural_cmp(ha, hb).then_with(|| natural_cmp(la, lb));
            if o.is_ne() {
                return o;
            }
        }
        a.len().cmp(&b.len())
    }
}

/// `h1->l3 h2->l2`.
impl fmt::Display for Plugging {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, (h, l)) in self.pairs().into_iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{h}->{l}")?;
        }
        Ok(())
    }
}

/// Parent→children edges: containment, plugs, and the root's hold on
/// anchored labels.
fn edges<'a>(graph: &'a ScopeGraph, plugging: &'a Plugging) -> HashMap<&'a Atom, Vec<&'a Atom>> {
    let mut children: HashMap<&Atom, Vec<&Atom>> = HashMap::new();
    for (owner, inner) in &graph.containment {
        children.entry(owner).or_default().extend(inner);
    }
    for (h, l) in &plugging.assignment {
        children.entry(h).or_default().push(l);
    }
    children.entry(&graph.root_label).or_default().extend(&graph.anchored);
    children
}

fn below<'a>(children: &HashMap<&'a Atom, Vec<&'a Atom>>, from: &'a Atom) -> HashSet<&'a Atom> {
    let mut seen = HashSet::new();
    let mut stack: Vec<&Atom> = children.get(from).cloned().unwrap_or_default();
    while let Some(n) = stack.pop() {
        if seen.insert(n) {
            stack.extend(children.get(n).into_iter().flatten());
        }
    }
    seen
}

/// Whether `plugging` is a reading of `graph`.
pub fn is_admissible(graph: &ScopeGraph, plugging: &Plugging) -> bool {
    let holes: BTreeSet<&Atom> = graph.holes.iter().collect();
    let plugged_holes: BTreeSet<&Atom> = plugging.assignment.keys().collect();
    let mut plugged_labels: Vec<&Atom> = plugging.assignment.values().collect();
    plugged_labels.sort();
    let mut floating: Vec<&Atom> = graph.floating_labels.iter().collect();
    floating.sort();
    if holes != plugged_holes || plugged_labels != floating {
        return false;
    }

    let children = edges(graph, plugging);
    let mut parents: HashMap<&Atom, usize> = HashMap::new();
    for kids in children.values() {
        for k in kids {
            *parents.entry(k).or_default() += 1;
        }
    }
    let nodes = graph.nodes();
    for n in &nodes {
        let want = usize::from(*n != graph.root_label);
        if parents.get(n).copied().unwrap_or(0) != want {
            return false;
        }
    }
    let reached = below(&children, &graph.root_label);
    if reached.len() + 1 != nodes.len() {
        return false;
    }
    graph
        .leq_constraints
        .iter()
        .all(|(l, h)| below(&children, h).contains(l))
}

/// All readings, in lexicographic order of (hole, label) pairs.
pub fn enumerate_pluggings(graph: &ScopeGraph) -> Result<Vec<Plugging>, ScopeError> {
    if graph.holes.len() != graph.floating_labels.len() {
        return Err(ScopeError::CardinalityMismatch {
            holes: graph.holes.len(),
            labels: graph.floating_labels.len(),
        });
    }
    let mut out = Vec::new();
    let mut current = Plugging::default();
    let mut used = vec![false; graph.floating_labels.len()];
    search(graph, 0, &mut current, &mut used, &mut out);
    out.sort();
    Ok(out)
}

fn search(graph: &ScopeGraph, at: usize, current: &mut Plugging, used: &mut [bool], out: &mut Vec<Plugging>) {
    if at == graph.holes.len() {
        if is_admissible(graph, current) {
            out.push(current.clone());
        }
        return;
    }
    let hole = &graph.holes[at];
    for (i, label) in graph.floating_labels.iter().enumerate() {
        if used[i] {
            continue;
        }
        // Plugging a label into a hole it already dominates closes a cycle.
        let children = edges(graph, current);
        if label == hole || below(&children, label).contains(hole) {
            continue;
        }
        used[i] = true;
        current.assignment.insert(hole.clone(), label.clone());
        search(graph, at + 1, current, used, out);
        current.assignment.remove(hole);
        used[i] = false;
    }
}

/// The syntax-derived plugging from the `ccom_plug` facts, and whether it
/// is one of the readings.
pub fn default_plugging(vit: &Vit, graph: &ScopeGraph) -> Result<(Plugging, bool), ScopeError> {
    let mut plugging = Plugging::default();
    for h in &graph.holes {
        let label = vit
            .scope
            .iter()
            .filter(|c| c.name() == "ccom_plug" && c.arg_atom(0) == Some(h))
            .find_map(|c| c.arg_atom(1))
            .ok_or_else(|| ScopeError::IncompleteDefault(h.clone()))?;
        plugging.assignment.insert(h.clone(), label.clone());
    }
    let admissible = is_admissible(graph, &plugging);
    Ok((plugging, admissible))
}
