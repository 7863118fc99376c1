//! Generators, oracles, and property checks shared by the integration tests.
//! Each `prop_*` function runs a proptest runner for `cases` cases and
//! returns the first counterexample as an error.

#![allow(dead_code)]

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt::Write;

use proptest::prelude::*;
use proptest::test_runner::{Config, TestRunner};

use semdb::plex::{check_value, effective_features, parse_lexicon_source, print_lexicon, ValueExpr};
use semdb::scope::{build_scope_graph, build_tree, enumerate_pluggings, Plugging, ScopeGraph};
use semdb::semclass::Catalog;
use semdb::validate::{validate, PatternIndex, SortAliasTable};
use semdb::vit::{parse_vit, print_vit, Pred, SegmentDescription, Term, Vit};
use semdb::{demo, natural_cmp, Atom};

pub fn run<S: Strategy>(
    cases: u32,
    strategy: S,
    test: impl Fn(S::Value) -> Result<(), TestCaseError>,
) -> Result<(), String> {
    let mut runner = TestRunner::new(Config {
        cases,
        failure_persistence: None,
        ..Config::default()
    });
    runner.run(&strategy, test).map_err(|e| e.to_string())
}

// ---------------------------------------------------------------- values

const ALPHABET: [&str; 6] = ["a", "b", "c", "d", "e", "f"];

fn lit() -> impl Strategy<Value = ValueExpr> {
    proptest::sample::select(&ALPHABET[..]).prop_map(ValueExpr::lit)
}

fn literal_or() -> impl Strategy<Value = ValueExpr> {
    proptest::sample::subsequence(&ALPHABET[..], 2..=ALPHABET.len())
        .prop_map(|s| ValueExpr::or(s.into_iter().map(ValueExpr::lit)).unwrap())
}

/// Any Top-free expression: literals, disjunctions, negations.
fn expr() -> impl Strategy<Value = ValueExpr> {
    let leaf = prop_oneof![lit(), literal_or()];
    leaf.prop_recursive(2, 8, 3, |inner| {
        prop_oneof![
            inner.clone().prop_map(|e| ValueExpr::not(e).unwrap()),
            proptest::collection::vec(inner, 2..4).prop_filter_map("distinct disjuncts", |items| ValueExpr::or(items).ok()),
        ]
    })
}

fn not_free(e: &ValueExpr) -> bool {
    e.is_not_free()
}

pub fn prop_check_value_algebra(cases: u32) -> Result<(), String> {
    run(cases, (expr(), expr(), literal_or(), lit()), |(a, x, or, l)| {
        prop_assert!(check_value(&ValueExpr::Top, &x));
        prop_assert!(check_value(&ValueExpr::Top, &l));
        if not_free(&a) {
            let negated = ValueExpr::not(x.clone()).unwrap();
            prop_assert_eq!(check_value(&a, &negated), !check_value(&a, &x), "a={} x={}", a, x);
        }
        let member = or.literals().contains(&l.as_lit().unwrap());
        prop_assert_eq!(check_value(&or, &l), member);
        Ok(())
    })
}

// ---------------------------------------------------------------- lexicons

/// Raw choices for a class hierarchy; `build` turns them into source text
/// that is valid by construction.
#[derive(Debug, Clone)]
pub struct HierarchyPlan {
    parents: Vec<Option<usize>>,
    decls: Vec<Vec<(u8, u8, u8)>>,
    bases: Vec<(usize, Vec<(u8, u8)>)>,
}

fn hierarchy_plan() -> impl Strategy<Value = HierarchyPlan> {
    (1usize..6)
        .prop_flat_map(|n| {
            let parents = (0..n)
                .map(|i| {
                    if i == 0 {
                        Just(None).boxed()
                    } else {
                        prop_oneof![Just(None), (0..i).prop_map(Some)].boxed()
                    }
                })
                .collect::<Vec<_>>();
            let decls = proptest::collection::vec(proptest::collection::vec(any::<(u8, u8, u8)>(), 0..4), n);
            let bases = proptest::collection::vec((0..n, proptest::collection::vec(any::<(u8, u8)>(), 0..4)), 0..4);
            (parents, decls, bases)
        })
        .prop_map(|(parents, decls, bases)| HierarchyPlan { parents, decls, bases })
}

fn pick<'a>(items: &'a [&'a str], k: u8) -> &'a str {
    items[k as usize % items.len()]
}

/// A fresh appropriateness condition chosen by `k`.
fn fresh_value(k: u8, salt: u8) -> ValueExpr {
    match k % 5 {
        0 => ValueExpr::Top,
        1 => ValueExpr::lit(pick(&ALPHABET, salt)),
        2 | 3 => {
            let start = salt as usize % ALPHABET.len();
            let len = 2 + (k as usize / 5) % 3;
            let items: BTreeSet<&str> = (0..len).map(|j| ALPHABET[(start + j) % ALPHABET.len()]).collect();
            ValueExpr::or(items.into_iter().map(ValueExpr::lit)).unwrap()
        }
        _ => ValueExpr::not(ValueExpr::lit(pick(&ALPHABET, salt))).unwrap(),
    }
}

/// A value a base may assign under `appr`, or `None` if nothing obvious fits.
fn admissible_value(appr: &ValueExpr, k: u8) -> Option<ValueExpr> {
    match appr {
        ValueExpr::Top => Some(ValueExpr::lit(pick(&ALPHABET, k))),
        ValueExpr::Or(_) => {
            let lits = appr.literals();
            Some(ValueExpr::Lit(lits[k as usize % lits.len()].clone()))
        }
        ValueExpr::Not(_) => ALPHABET
            .iter()
            .map(|a| ValueExpr::lit(a))
            .find(|v| check_value(appr, v)),
        ValueExpr::Lit(_) => None,
    }
}

impl HierarchyPlan {
    pub fn source(&self) -> String {
        let n = self.parents.len();
        // feature → (appropriateness, fixed) as seen by each class
        let mut seen: Vec<BTreeMap<String, (ValueExpr, Option<ValueExpr>)>> = Vec::new();
        let mut out = String::new();
        for i in 0..n {
            let mut env = self.parents[i].map(|p| seen[p].clone()).unwrap_or_default();
            let parent = self.parents[i].map_or("top".to_string(), |p| format!("c{p}"));
            let mut body: Vec<String> = Vec::new();
            let mut used = BTreeSet::new();
            for (j, &(which, k, salt)) in self.decls[i].iter().enumerate() {
                let inherited: Vec<String> = env.keys().filter(|f| !used.contains(*f)).cloned().collect();
                if which % 3 == 0 && !inherited.is_empty() {
                    // refine an inherited feature
                    let f = inherited[which as usize / 3 % inherited.len()].clone();
                    let (appr, fixed) = env[&f].clone();
                    let Some(v) = admissible_value(&appr, k) else { continue };
                    if fixed.is_some() && k % 2 == 0 {
                        continue;
                    }
                    used.insert(f.clone());
                    body.push(format!("{f}: {v}"));
                    env.insert(f, (appr, Some(v)));
                } else {
                    let f = format!("f{i}_{j}");
                    let v = fresh_value(k, salt);
                    used.insert(f.clone());
                    body.push(format!("{f}: {v}"));
                    let entry = match v {
                        ValueExpr::Lit(_) => (ValueExpr::Top, Some(v)),
                        other => (other, None),
                    };
                    env.insert(f, entry);
                }
            }
            write!(out, "class c{i} :< {parent} >: ").unwrap();
            if body.is_empty() {
                out.push_str(".\n");
            } else {
                writeln!(out, "{} .", body.join(" & ")).unwrap();
            }
            seen.push(env);
        }
        for (b, (class, assigns)) in self.bases.iter().enumerate() {
            let env = &seen[*class];
            let open: Vec<(&String, &ValueExpr)> = env
                .iter()
                .filter(|(_, (_, fixed))| fixed.is_none())
                .map(|(f, (appr, _))| (f, appr))
                .collect();
            let mut body = Vec::new();
            let mut used = BTreeSet::new();
            for &(which, k) in assigns {
                if open.is_empty() {
                    break;
                }
                let (f, appr) = open[which as usize % open.len()];
                if !used.insert(f) {
                    continue;
                }
                if let Some(v) = admissible_value(appr, k) {
                    body.push(format!("{f}: {v}"));
                }
            }
            let name = if b % 2 == 0 { format!("'B{b};x'") } else { format!("b{b}") };
            write!(out, "base {name} :<< c{class} >>: ").unwrap();
            if body.is_empty() {
                out.push_str(".\n");
            } else {
                writeln!(out, "{} .", body.join(" & ")).unwrap();
            }
        }
        out
    }
}

pub fn prop_inheritance_monotonic(cases: u32) -> Result<(), String> {
    run(cases, hierarchy_plan(), |plan| {
        let src = plan.source();
        let lex = parse_lexicon_source(&src).map_err(|e| TestCaseError::fail(format!("{e}\n{src}")))?;
        for class in lex.classes.values() {
            let own = effective_features(&lex, &class.name).map_err(|e| TestCaseError::fail(format!("{e}\n{src}")))?;
            let Some(parent) = &class.parent else { continue };
            let inherited = effective_features(&lex, parent).unwrap();
            prop_assert!(own.len() >= inherited.len());
            for (p, c) in inherited.iter().zip(&own) {
                // same names, parent order kept as a prefix
                prop_assert_eq!(&p.decl.name, &c.decl.name);
                // the subclass admits no value the parent rejects
                for a in ALPHABET {
                    let v = ValueExpr::lit(a);
                    let child_admits = match &c.fixed {
                        Some(f) => f == &v,
                        None => check_value(&c.decl.appropriateness, &v),
                    };
                    if child_admits {
                        prop_assert!(check_value(&p.decl.appropriateness, &v), "{} {}\n{}", c.decl.name, a, src);
                    }
                }
            }
        }
        for base in &lex.bases {
            semdb::plex::expand_base(&lex, base.name.text()).map_err(|e| TestCaseError::fail(format!("{e}\n{src}")))?;
        }
        Ok(())
    })
}

fn value_for_round_trip() -> impl Strategy<Value = ValueExpr> {
    prop_oneof![Just(ValueExpr::Top), expr()]
}

fn lex_atom() -> impl Strategy<Value = String> {
    proptest::sample::select(&["c0", "c1", "c2", "Termin", "VVFIN;VVINF", "top", "it's", "x y", "c\\d", "ok_9"][..])
        .prop_map(|s| s.to_string())
}

/// Parse-valid lexicon text (names may dangle; only syntax matters here).
fn lexicon_text() -> impl Strategy<Value = String> {
    let body = || proptest::collection::vec((lex_atom(), value_for_round_trip()), 0..4);
    let class = (lex_atom(), prop_oneof![Just(None), lex_atom().prop_map(Some)], body());
    let base = (lex_atom(), lex_atom(), body());
    (proptest::collection::vec(class, 0..4), proptest::collection::vec(base, 0..4)).prop_map(|(classes, bases)| {
        let q = |s: &str| Atom::new(s).to_source();
        let mut out = String::new();
        let mut names = BTreeSet::new();
        let render = |items: &[(String, ValueExpr)]| {
            let mut seen = BTreeSet::new();
            let parts: Vec<String> = items
                .iter()
                .filter(|(f, _)| seen.insert(f.clone()))
                .map(|(f, v)| format!("{}: {v}", q(f)))
                .collect();
            if parts.is_empty() {
                ".".to_string()
            } else {
                format!("{} .", parts.join(" & "))
            }
        };
        for (name, parent, items) in &classes {
            if !names.insert(name.clone()) {
                continue;
            }
            let parent = parent.as_deref().map_or("top".to_string(), q);
            writeln!(out, "class {} :< {parent} >: {}", q(name), render(items)).unwrap();
        }
        let mut bnames = BTreeSet::new();
        for (name, class, items) in &bases {
            if !bnames.insert(name.clone()) {
                continue;
            }
            writeln!(out, "% base {name}\nbase {} :<< {} >>: {}", q(name), q(class), render(items)).unwrap();
        }
        out
    })
}

pub fn prop_lexicon_round_trip(cases: u32) -> Result<(), String> {
    run(cases, lexicon_text(), |src| {
        let lex = parse_lexicon_source(&src).map_err(|e| TestCaseError::fail(format!("{e}\n{src}")))?;
        let printed = print_lexicon(&lex);
        let again = parse_lexicon_source(&printed).map_err(|e| TestCaseError::fail(format!("{e}\n{printed}")))?;
        prop_assert_eq!(&again, &lex);
        prop_assert_eq!(print_lexicon(&again), printed);
        Ok(())
    })
}

// ---------------------------------------------------------------- vits

fn vit_atom() -> impl Strategy<Value = Atom> {
    proptest::sample::select(&["p", "q", "l1", "i2", "h3", "yes", "x y", "It's", "a\\b", "&", "-", "", "Up"][..])
        .prop_map(Atom::new)
}

fn term() -> impl Strategy<Value = Term> {
    let leaf = prop_oneof![
        vit_atom().prop_map(Term::Atom),
        (-20i64..20).prop_map(Term::Int),
        proptest::sample::select(&["X", "_G1", "Cat"][..]).prop_map(|v| Term::Var(v.to_string())),
    ];
    leaf.prop_recursive(2, 10, 3, |inner| {
        prop_oneof![
            (vit_atom(), proptest::collection::vec(inner.clone(), 1..3)).prop_map(|(f, args)| Term::Compound(f, args)),
            proptest::collection::vec(inner, 0..3).prop_map(Term::List),
        ]
    })
}

fn pred() -> impl Strategy<Value = Pred> {
    (vit_atom(), proptest::collection::vec(term(), 1..4)).prop_map(|(functor, args)| Pred { functor, args })
}

fn labelled_pred() -> impl Strategy<Value = Pred> {
    (vit_atom(), vit_atom(), proptest::collection::vec(term(), 0..3)).prop_map(|(functor, label, rest)| {
        let mut args = vec![Term::Atom(label)];
        args.extend(rest);
        Pred { functor, args }
    })
}

pub fn random_vit() -> impl Strategy<Value = Vit> {
    let list = || proptest::collection::vec(pred(), 0..3);
    (
        (vit_atom(), vit_atom(), vit_atom()),
        proptest::collection::vec(labelled_pred(), 0..4),
        vit_atom(),
        (list(), list(), list(), list()),
        (list(), list(), list()),
    )
        .prop_map(|((id, flag, surface), semantics, main, (a, b, c, d), (e, f, g))| Vit {
            segment: SegmentDescription {
                utterance_id: id,
                mode_flag: flag,
                surface_string: surface,
            },
            semantics,
            main_label: main,
            sorts: a,
            discourse: b,
            syntax: c,
            tense_aspect: d,
            scope: e,
            prosody: f,
            groups: g,
        })
}

pub fn prop_vit_round_trip(cases: u32) -> Result<(), String> {
    run(cases, random_vit(), |vit| {
        let printed = print_vit(&vit);
        let again = parse_vit(&printed).map_err(|e| TestCaseError::fail(format!("{e}\n{printed}")))?;
        prop_assert_eq!(again, vit);
        Ok(())
    })
}

// ---------------------------------------------------------------- scope

/// Shape of a random scope problem. Labels are numbered from `offset` so
/// that identifiers cross digit boundaries (`l9`, `l10`).
#[derive(Debug, Clone)]
pub struct ScopeSpec {
    pub offset: usize,
    pub holes: usize,
    /// Owner of each hole: index into all labels.
    pub hole_owner: Vec<usize>,
    /// Owner of each contained label.
    pub contained_owner: Vec<usize>,
    /// (label index, hole index).
    pub leqs: Vec<(usize, usize)>,
    pub anchored: bool,
}

pub fn scope_spec() -> impl Strategy<Value = ScopeSpec> {
    (0usize..=5, 0usize..3, proptest::sample::select(&[0usize, 1, 7][..]), any::<bool>())
        .prop_flat_map(|(holes, contained, offset, anchored)| {
            let labels = 1 + holes + contained;
            (
                Just((holes, offset, anchored)),
                proptest::collection::vec(0..labels, holes),
                proptest::collection::vec(0..labels, contained),
                proptest::collection::vec((0..labels, 0..holes.max(1)), 0..=4),
            )
        })
        .prop_map(|((holes, offset, anchored), mut hole_owner, contained_owner, leqs)| {
            // The root usually holds the first hole, as a mood operator does.
            if let Some(first) = hole_owner.first_mut() {
                if *first % 3 != 0 {
                    *first = 0;
                }
            }
            ScopeSpec {
                offset,
                holes,
                hole_owner,
                contained_owner,
                leqs: if holes == 0 { Vec::new() } else { leqs },
                anchored,
            }
        })
}

impl ScopeSpec {
    fn label_count(&self) -> usize {
        1 + self.holes + self.contained_owner.len()
    }

    fn label(&self, k: usize) -> String {
        format!("l{}", self.offset + k)
    }

    fn hole(&self, k: usize) -> String {
        format!("h{}", self.offset + k + 1)
    }

    /// Root is label 0, floating labels 1..=holes, contained labels after.
    pub fn vit_text(&self) -> String {
        let n = self.label_count();
        let mut owned: Vec<Vec<String>> = vec![Vec::new(); n + 1];
        for (h, &o) in self.hole_owner.iter().enumerate() {
            owned[o].push(self.hole(h));
        }
        for (c, &o) in self.contained_owner.iter().enumerate() {
            owned[o].push(self.label(1 + self.holes + c));
        }
        let mut preds = Vec::new();
        for k in 0..n {
            let mut args = vec![self.label(k), format!("i{}", k + 1)];
            args.extend(owned[k].iter().cloned());
            preds.push(format!("p{k}({})", args.join(",")));
        }
        if self.anchored {
            preds.push(format!("pron({},i{})", self.label(n), n + 1));
        }
        let mut scope = Vec::new();
        for h in 0..self.holes {
            scope.push(format!("ccom_plug({},{})", self.hole(h), self.label(1 + (h + 1) % self.holes)));
        }
        for &(l, h) in &self.leqs {
            scope.push(format!("leq({},{})", self.label(l), self.hole(h)));
        }
        format!(
            "vit(segment_description(s,yes,'x'),[{}],{},[],[],[],[],[{}],[],[])",
            preds.join(","),
            self.label(0),
            scope.join(",")
        )
    }

    pub fn vit(&self) -> Vit {
        parse_vit(&self.vit_text()).unwrap()
    }

    pub fn graph(&self) -> ScopeGraph {
        build_scope_graph(&self.vit(), &Catalog::builtin()).unwrap()
    }
}

/// Independent admissibility check: every node has exactly one parent
/// except the root, each parent chain reaches the root, and each
/// `leq(l,h)` finds `h` on the parent chain above `l`.
pub fn oracle_admissible(g: &ScopeGraph, assignment: &[(Atom, Atom)]) -> bool {
    let mut parent: HashMap<&Atom, &Atom> = HashMap::new();
    let mut nodes: BTreeSet<&Atom> = BTreeSet::new();
    nodes.insert(&g.root_label);
    nodes.extend(&g.holes);
    nodes.extend(&g.floating_labels);
    nodes.extend(&g.anchored);
    let mut edges: Vec<(&Atom, &Atom)> = Vec::new();
    for (owner, inner) in &g.containment {
        nodes.insert(owner);
        for x in inner {
            nodes.insert(x);
            edges.push((owner, x));
        }
    }
    edges.extend(assignment.iter().map(|(h, l)| (h, l)));
    edges.extend(g.anchored.iter().map(|a| (&g.root_label, a)));
    for (p, c) in edges {
        if parent.insert(c, p).is_some() {
            return false;
        }
    }
    if parent.contains_key(&g.root_label) {
        return false;
    }
    let chain_to_root = |start: &Atom| -> Option<Vec<Atom>> {
        let mut chain = Vec::new();
        let mut at = start;
        for _ in 0..=nodes.len() {
            if *at == g.root_label {
                return Some(chain);
            }
            at = parent.get(at)?;
            chain.push(at.clone());
        }
        None
    };
    for n in &nodes {
        if chain_to_root(n).is_none() {
            return false;
        }
    }
    g.leq_constraints
        .iter()
        .all(|(l, h)| chain_to_root(l).is_some_and(|chain| chain.contains(h)))
}

fn permutations(items: &[Atom]) -> Vec<Vec<Atom>> {
    if items.is_empty() {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for i in 0..items.len() {
        let mut rest = items.to_vec();
        let first = rest.remove(i);
        for mut tail in permutations(&rest) {
            tail.insert(0, first.clone());
            out.push(tail);
        }
    }
    out
}

/// Every bijection holes → floating labels that passes the oracle, as
/// `h->l` strings in natural hole order.
pub fn brute_force(g: &ScopeGraph) -> BTreeSet<String> {
    let mut holes = g.holes.clone();
    holes.sort_by(|a, b| natural_cmp(a.text(), b.text()));
    permutations(&g.floating_labels)
        .into_iter()
        .map(|labels| holes.iter().cloned().zip(labels).collect::<Vec<_>>())
        .filter(|a| oracle_admissible(g, a))
        .map(|a| a.iter().map(|(h, l)| format!("{h}->{l}")).collect::<Vec<_>>().join(" "))
        .collect()
}

pub fn readings(g: &ScopeGraph) -> Vec<String> {
    enumerate_pluggings(g).unwrap().iter().map(Plugging::to_string).collect()
}

pub fn prop_oracle_equivalence(cases: u32) -> Result<(), String> {
    run(cases, scope_spec(), |spec| {
        let g = spec.graph();
        prop_assert!(g.holes.len() <= 5);
        let fast = readings(&g);
        let slow = brute_force(&g);
        let fast_set: BTreeSet<String> = fast.iter().cloned().collect();
        prop_assert_eq!(fast.len(), fast_set.len(), "duplicate readings");
        prop_assert_eq!(fast_set, slow, "{}", spec.vit_text());
        // output order: lexicographic by (hole, label) in natural order
        let parsed = enumerate_pluggings(&g).unwrap();
        prop_assert!(parsed.windows(2).all(|w| w[0] < w[1]));
        Ok(())
    })
}

pub fn prop_leq_monotonic(cases: u32) -> Result<(), String> {
    run(cases, (scope_spec(), any::<(usize, usize)>()), |(spec, (l, h))| {
        let g = spec.graph();
        let before = enumerate_pluggings(&g).unwrap().len();
        if g.holes.is_empty() {
            return Ok(());
        }
        let mut labels: Vec<Atom> = g.nodes().into_iter().filter(|n| n.text().starts_with('l')).collect();
        labels.sort();
        let mut more = g.clone();
        more.leq_constraints
            .push((labels[l % labels.len()].clone(), g.holes[h % g.holes.len()].clone()));
        let after = enumerate_pluggings(&more).unwrap().len();
        prop_assert!(after <= before);
        Ok(())
    })
}

pub fn prop_tree_coverage(cases: u32) -> Result<(), String> {
    run(cases, scope_spec(), |spec| {
        let vit = spec.vit();
        let g = spec.graph();
        for p in enumerate_pluggings(&g).unwrap() {
            let tree = build_tree(&vit, &g, &p).map_err(|e| TestCaseError::fail(e.to_string()))?;
            let mut got: Vec<String> = tree.predicates().iter().map(|p| p.to_string()).collect();
            let mut want: Vec<String> = vit.semantics.iter().map(Pred::to_string).collect();
            got.sort();
            want.sort();
            prop_assert_eq!(got, want);
        }
        Ok(())
    })
}

/// Draws `n` values from a strategy, for checking generator coverage.
pub fn sample<S: Strategy>(strategy: S, n: usize) -> Vec<S::Value> {
    use proptest::strategy::ValueTree;
    let mut runner = TestRunner::deterministic();
    (0..n).map(|_| strategy.new_tree(&mut runner).unwrap().current()).collect()
}

pub fn hierarchy_sources(n: usize) -> Vec<String> {
    sample(hierarchy_plan(), n).iter().map(HierarchyPlan::source).collect()
}

// ---------------------------------------------------------------- scale lexicon

const EXTRA_CLASSES: &str = "
class det_c :< semdb_c >:
   semclass: det_quant & predscheme: 'L,I,H' & sort_of_inst: top & usb_macro: det_sem .
class demonstrative_c :< semdb_c >:
   semclass: demonstrative & predscheme: 'L,I,L1' & sort_of_inst: top & usb_macro: dem_sem .
class wh_c :< semdb_c >:
   semclass: wh_question & predscheme: 'L,I,H' & sort_of_inst: top & usb_macro: whq_sem .
class card_c :< semdb_c >:
   semclass: card_quantifier & predscheme: 'L,I,R,H,N' & sort_of_inst: top & usb_macro: card_sem .
";

const SCALE_CLASSES: [&str; 6] = ["common_noun_c", "transitive_c", "det_c", "demonstrative_c", "wh_c", "card_c"];

/// The demo lexicon plus one class per remaining builtin semantic class and
/// `n` generated bases spread evenly over all six classes.
pub fn scale_lexicon_source(n: usize) -> String {
    let mut out = String::from(demo::LEXICON_SOURCE);
    out.push_str(EXTRA_CLASSES);
    let roles = ["arg1", "arg2", "arg3"];
    for i in 0..n {
        let class = SCALE_CLASSES[i % SCALE_CLASSES.len()];
        let word = format!("w{i:04}");
        let sort = if i % 3 == 0 {
            format!("(s{} \\/ s{})", i % 7, i % 7 + 1)
        } else {
            format!("s{}", i % 9)
        };
        write!(
            out,
            "\nbase 'W{i:04}' :<< {class} >>:\n   pos: 'POS{}' & lemma: 'W{i:04}' & syntax_link: {word} & predname: {word} & sort_of_inst: {sort}",
            i % 4
        )
        .unwrap();
        if class == "transitive_c" {
            let a1 = roles[i % 3];
            let a2 = roles[(i / 3 + 1 + i) % 3];
            let a2 = if a2 == a1 { roles[(i + 1) % 3] } else { a2 };
            write!(out, " & role_a1: {a1} & role_a2: {a2}").unwrap();
        }
        out.push_str(" .\n");
    }
    out
}

// ---------------------------------------------------------------- validator

/// Builds a term from database patterns with consistent identifiers; the
/// validator must accept it.
pub fn assembled_vit(index: &PatternIndex, picks: &[(usize, u8)]) -> String {
    let heads: Vec<&Atom> = index.declared_roles.keys().collect();
    let mut semantics = vec!["decl(l0,h0)".to_string()];
    let mut sorts = Vec::new();
    let mut syntax = Vec::new();
    let mut tense = Vec::new();
    let mut holes = vec!["h0".to_string()];
    let mut groups = Vec::new();
    let mut fresh = 1000;
    let mut next = || {
        fresh += 1;
        fresh
    };
    for (k, &(which, flavor)) in picks.iter().enumerate() {
        let head = heads[which % heads.len()];
        let label = format!("l{}", k + 1);
        let inst = format!("i{}", k + 1);
        let pattern = index.pattern(head.text()).unwrap();
        let mut args = vec![label.clone(), inst.clone()];
        for kind in &pattern.arg_kinds[2..] {
            use semdb::semclass::ArgKind::*;
            args.push(match kind {
                Label | RestrictorLabel => "l0".to_string(),
                Instance => format!("i{}", next()),
                Hole => {
                    let h = format!("h{}", next());
                    holes.push(h.clone());
                    h
                }
                Cardinality => "1".to_string(),
            });
        }
        semantics.push(format!("{}({})", Term::Atom(head.clone()), args.join(",")));
        for role in &index.declared_roles[head] {
            semantics.push(format!("{role}({label},{inst},i{})", next()));
        }
        if let Some(declared) = index.declared_sorts.get(head) {
            if let Some(first) = declared.literals().first() {
                if flavor % 2 == 0 {
                    sorts.push(format!("s_sort({inst},{})", Term::Atom((*first).clone())));
                } else {
                    sorts.push(format!("s_sort({inst},&(anything,{}))", Term::Atom((*first).clone())));
                }
            }
        }
        syntax.push(format!("num({inst},{})", ["sg", "pl"][flavor as usize % 2]));
        syntax.push(format!("pers({inst},{})", 1 + flavor % 3));
        if flavor % 4 == 0 {
            tense.push(format!("ta_tense({inst},{})", ["pres", "past", "fut"][flavor as usize % 3]));
        }
        if flavor % 5 == 0 {
            groups.push(format!("sem_group(l{},[{label}])", 500 + k));
        }
    }
    let scope: Vec<String> = holes.iter().map(|h| format!("ccom_plug({h},l0)")).collect();
    format!(
        "vit(segment_description(gen,yes,'generated'),[{}],l0,[{}],[],[{}],[{}],[{}],[pros_mood(l0,decl)],[{}])",
        semantics.join(","),
        sorts.join(","),
        syntax.join(","),
        tense.join(","),
        scope.join(","),
        groups.join(",")
    )
}

pub fn prop_validator_soundness(cases: u32) -> Result<(), String> {
    let lex = parse_lexicon_source(&scale_lexicon_source(60)).unwrap();
    let index = PatternIndex::build(&lex, &Catalog::builtin()).unwrap();
    let aliases = SortAliasTable::builtin();
    run(cases, proptest::collection::vec(any::<(usize, u8)>(), 0..6), |picks| {
        let text = assembled_vit(&index, &picks);
        let vit = parse_vit(&text).map_err(|e| TestCaseError::fail(format!("{e}\n{text}")))?;
        let v = validate(&vit, &index, &aliases);
        prop_assert!(v.is_empty(), "{:?}\n{}", v, text);
        Ok(())
    })
}

// ---------------------------------------------------------------- mutations

/// One single-fault mutation of the example term per check code.
pub const MUTATIONS: [(&str, &str, &str); 9] = [
    ("V1_ArityShape", "termin(l6,i2)", "termin(l6,i2,i9)"),
    ("V2_UndefinedLabel", "ein_card_qua(l3,i2,l1,h2,1)", "ein_card_qua(l3,i2,l7,h2,1)"),
    ("V3_RoleAttachment", "arg1(l4,i1,i3)", "arg1(l4,i4,i3)"),
    ("V4_RoleDeclaration", "arg3(l4,i1,i2)", "arg2(l4,i1,i2)"),
    ("V5_SortMismatch", "s_sort(i1,ment_communicat_poly)", "s_sort(i1,person)"),
    ("V6_ScopeReference", "[ccom_plug(h2,l2),", "["),
    ("V7_MainLabel", "l5,  ", "l2,  "),
    ("V8_GroupShape", "sem_group(l1,[l6])", "sem_group(l1,[l6,l4])"),
    ("V9_SyntaxVocabulary", "num(i3,pl)", "num(i3,du)"),
];

pub fn mutated(from: &str, to: &str) -> String {
    assert_eq!(demo::VIT_SOURCE.matches(from).count(), 1, "mutation site `{from}` must be unique");
    demo::VIT_SOURCE.replacen(from, to, 1)
}
