//! Correctness checks for interface terms against the semantic database.
//!
//! Each check has a code; a check owns its evidence so a single fault in a
//! term produces a single violation:
//!
//! | code | what |
//! |------|------|
//! | V1 | arity and argument kinds of known semantics predicates |
//! | V2 | labels used as arguments (restrictors, prosody) are defined |
//! | V3 | a role predicate shares label and instance with a head |
//! | V4 | the roles at a head are exactly the base's declared roles |
//! | V5 | sorts are accepted by the base's `sort_of_inst` |
//! | V6 | scope constraints name real holes/labels; one `ccom_plug` per hole |
//! | V7 | the main label labels a semantics predicate |
//! | V8 | groups are well-formed, their members exist, groups are disjoint |
//! | V9 | closed vocabularies; annotated instances occur in semantics |

use std::collections::{BTreeMap, BTreeSet, HashMap, HashSet};
use std::fmt;

use indexmap::IndexMap;
use thiserror::Error;

use crate::lex::{Cursor, Punct, SyntaxError};
use crate::plex::{check_value, expand_base, LexError, Lexicon, ValueExpr};
use crate::semclass::{conventional_kind, predscheme_instances, ArgKind, Catalog, PredPattern, SemClassError, ROLE_NAMES};
use crate::vit::{Pred, Term, Vit};
use crate::Atom;

const BUILTIN_ALIASES: &str = include_str!("../data/sorts.alias");

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum IndexError {
    #[error(transparent)]
    Lex(#[from] LexError),
    #[error(transparent)]
    SemClass(#[from] SemClassError),
}

/// What the database says each predicate should look like.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct PatternIndex {
    pub by_name: IndexMap<Atom, PredPattern>,
    /// Head predicate name → roles its base declares.
    pub declared_roles: IndexMap<Atom, BTreeSet<Atom>>,
    /// Head predicate name → the base's `sort_of_inst`.
    pub declared_sorts: IndexMap<Atom, ValueExpr>,
}

impl PatternIndex {
    /// Bases whose `semclass` is unset are skipped; they contribute nothing
    /// to interface terms. When two bases produce the same predicate name the
    /// first one in lexicon order wins.
    pub fn build(lexicon: &Lexicon, catalog: &Catalog) -> Result<PatternIndex, IndexError> {
        let mut index = PatternIndex::default();
        for base in &lexicon.bases {
            let entry = expand_base(lexicon, base.name.text())?;
            if entry.value("semclass").is_top() {
                continue;
            }
            let patterns = predscheme_instances(&entry, catalog)?;
            let head = patterns[0].predicate_name.clone();
            let roles = patterns[1..]
                .iter()
                .filter(|p| ROLE_NAMES.contains(&p.predicate_name.text()))
                .map(|p| p.predicate_name.clone())
                .collect();
            index.declared_roles.entry(head.clone()).or_insert(roles);
            let sort = entry.value("sort_of_inst");
            if !sort.is_top() {
                index.declared_sorts.entry(head).or_insert_with(|| sort.clone());
            }
            for p in patterns {
                index.by_name.entry(p.predicate_name.clone()).or_insert(p);
            }
        }
        for (name, p) in &catalog.closed_class_patterns {
            index.by_name.entry(name.clone()).or_insert_with(|| p.clone());
        }
        Ok(index)
    }

    pub fn is_head(&self, name: &str) -> bool {
        self.declared_roles.contains_key(name)
    }

    pub fn pattern(&self, name: &str) -> Option<&PredPattern> {
        self.by_name.get(name)
    }
}

/// Argument kinds of a predicate: from its pattern when the arity fits,
/// otherwise by identifier convention (`None` where that says nothing).
pub fn resolve_kinds(pred: &Pred, pattern: Option<&PredPattern>) -> Vec<Option<ArgKind>> {
    match pattern {
        Some(p) if p.arity() == pred.arity() => p.arg_kinds.iter().copied().map(Some).collect(),
        _ => pred.args.iter().map(conventional_kind).collect(),
    }
}

/// Interface-term sorts and the base sort values they stand for.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct SortAliasTable {
    pub aliases: BTreeMap<Atom, BTreeSet<Atom>>,
}

impl SortAliasTable {
    /// Reads `sort NAME subsumes s1, s2, ... .` declarations.
    pub fn parse(text: &str) -> Result<SortAliasTable, SyntaxError> {
        let mut cur = Cursor::new(text)?;
        let mut table = SortAliasTable::default();
        while !cur.at_eof() {
            if !cur.eat_word("sort") {
                return Err(cur.unexpected("`sort`"));
            }
            let (name, _) = cur.atom("sort name")?;
            cur.expect_word("subsumes")?;
            let set = table.aliases.entry(name).or_default();
            loop {
                set.insert(cur.atom("sort name")?.0);
                if !cur.eat(Punct::Comma) {
                    break;
                }
            }
            cur.expect(Punct::Dot)?;
        }
        Ok(table)
    }

    pub fn builtin() -> SortAliasTable {
        SortAliasTable::parse(BUILTIN_ALIASES).expect("builtin alias table parses")
    }

    /// The sorts `sort` stands for, itself included.
    pub fn subsumed(&self, sort: &Atom) -> BTreeSet<Atom> {
        let mut out = self.aliases.get(sort).cloned().unwrap_or_default();
        out.insert(sort.clone());
        out
    }

    /// Whether a base declaring `declared` accepts an interface sort.
    pub fn accepts(&self, declared: &ValueExpr, sort: &Atom) -> bool {
        self.subsumed(sort)
            .into_iter()
            .any(|s| check_value(declared, &ValueExpr::Lit(s)))
    }
}

#[allow(non_camel_case_types)]
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum ViolationCode {
    V1_ArityShape,
    V2_UndefinedLabel,
    V3_RoleAttachment,
    V4_RoleDeclaration,
    V5_SortMismatch,
    V6_ScopeReference,
    V7_MainLabel,
    V8_GroupShape,
    V9_SyntaxVocabulary,
}

impl ViolationCode {
    pub const ALL: [ViolationCode; 9] = [
        ViolationCode::V1_ArityShape,
        ViolationCode::V2_UndefinedLabel,
        ViolationCode::V3_RoleAttachment,
        ViolationCode::V4_RoleDeclaration,
        ViolationCode::V5_SortMismatch,
        ViolationCode::V6_ScopeReference,
        ViolationCode::V7_MainLabel,
        ViolationCode::V8_GroupShape,
        ViolationCode::V9_SyntaxVocabulary,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            ViolationCode::V1_ArityShape => "V1_ArityShape",
            ViolationCode::V2_UndefinedLabel => "V2_UndefinedLabel",
            ViolationCode::V3_RoleAttachment => "V3_RoleAttachment",
            ViolationCode::V4_RoleDeclaration => "V4_RoleDeclaration",
            ViolationCode::V5_SortMismatch => "V5_SortMismatch",
            ViolationCode::V6_ScopeReference => "V6_ScopeReference",
            ViolationCode::V7_MainLabel => "V7_MainLabel",
            ViolationCode::V8_GroupShape => "V8_GroupShape",
            ViolationCode::V9_SyntaxVocabulary => "V9_SyntaxVocabulary",
        }
    }
}

impl fmt::Display for ViolationCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Violation {
    pub code: ViolationCode,
    pub location: String,
    pub detail: String,
}

/// Report line: `CODE<TAB>location<TAB>detail`.
impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}\t{}\t{}", self.code, self.location, self.detail)
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct ValidateOptions {
    /// Flag semantics predicates the index does not know (role predicates
    /// excepted) as V1.
    pub strict: bool,
}

pub fn validate(vit: &Vit, index: &PatternIndex, aliases: &SortAliasTable) -> Vec<Violation> {
    validate_with(vit, index, aliases, ValidateOptions::default())
}

const VOCABULARY: &[(&str, &[&str])] = &[
    ("num", &["sg", "pl"]),
    ("pers", &["1", "2", "3"]),
    ("gend", &["masc", "fem", "neut"]),
    ("cas", &["nom", "acc", "dat", "gen"]),
    ("ta_mood", &["ind", "conj", "imp"]),
    ("ta_tense", &["pres", "past", "fut"]),
    ("pros_mood", &["decl", "quest", "imp"]),
];

fn vocabulary(name: &str) -> Option<&'static [&'static str]> {
    VOCABULARY.iter().find(|(n, _)| *n == name).map(|(_, v)| *v)
}

fn kind_noun(kind: ArgKind) -> &'static str {
    match kind {
        ArgKind::Label => "a label",
        ArgKind::RestrictorLabel => "a restrictor label",
        ArgKind::Instance => "an instance",
        ArgKind::Hole => "a hole",
        ArgKind::Cardinality => "an integer cardinality",
    }
}

fn fits(term: &Term, kind: ArgKind) -> bool {
    match kind {
        ArgKind::Cardinality => matches!(term, Term::Int(_)),
        ArgKind::Label | ArgKind::RestrictorLabel => conventional_kind(term) == Some(ArgKind::Label),
        k => conventional_kind(term) == Some(k),
    }
}

/// `&(a,&(b,c))` → a, b, c; a plain atom is its own only conjunct.
fn conjuncts(term: &Term) -> Option<Vec<Atom>> {
    match term {
        Term::Atom(a) => Some(vec![a.clone()]),
        Term::Compound(f, args) if f.text() == "&" => {
            let mut out = Vec::new();
            for a in args {
                out.extend(conjuncts(a)?);
            }
            Some(out)
        }
        _ => None,
    }
}

struct Checker<'a> {
    vit: &'a Vit,
    index: &'a PatternIndex,
    aliases: &'a SortAliasTable,
    options: ValidateOptions,
    /// Labels of semantics predicates.
    pred_labels: HashSet<&'a Atom>,
    /// Predicate labels plus group labels.
    defined_labels: HashSet<&'a Atom>,
    /// Atoms occurring as arguments of semantics predicates.
    instances: HashSet<&'a Atom>,
    /// Holes in first-appearance order.
    holes: Vec<&'a Atom>,
    out: Vec<Violation>,
}

impl<'a> Checker<'a> {
    fn new(vit: &'a Vit, index: &'a PatternIndex, aliases: &'a SortAliasTable, options: ValidateOptions) -> Self {
        let pred_labels: HashSet<&Atom> = vit.semantics.iter().filter_map(Pred::label).collect();
        let mut defined_labels = pred_labels.clone();
        defined_labels.extend(
            vit.groups
                .iter()
                .filter(|g| g.name() == "sem_group")
                .filter_map(Pred::label),
        );
        let instances = vit
            .semantics
            .iter()
            .flat_map(|p| p.args.iter().skip(1).filter_map(Term::as_atom))
            .collect();
        let mut holes = Vec::new();
        for p in &vit.semantics {
            let kinds = resolve_kinds(p, index.pattern(p.name()));
            for (arg, kind) in p.args.iter().zip(kinds) {
                if let (Some(ArgKind::Hole), Some(h)) = (kind, arg.as_atom()) {
                    if !holes.contains(&h) {
                        holes.push(h);
                    }
                }
            }
        }
        Checker {
            vit,
            index,
            aliases,
            options,
            pred_labels,
            defined_labels,
            instances,
            holes,
            out: Vec::new(),
        }
    }

    fn report(&mut self, code: ViolationCode, location: impl Into<String>, detail: impl Into<String>) {
        self.out.push(Violation {
            code,
            location: location.into(),
            detail: detail.into(),
        });
    }

    fn semantics(&mut self) {
        for p in &self.vit.semantics {
            let label = p.label().expect("semantics predicates are labelled");
            let location = format!("{}/{}", p.name(), label);
            let pattern = self.index.pattern(p.name());

            match pattern {
                Some(pat) if pat.arity() != p.arity() => {
                    self.report(
                        ViolationCode::V1_ArityShape,
                        &location,
                        format!("{p} has {} arguments, expected {pat}", p.arity()),
                    );
                }
                Some(pat) => {
                    for (i, (arg, kind)) in p.args.iter().zip(&pat.arg_kinds).enumerate() {
                        if !fits(arg, *kind) {
                            self.report(
                                ViolationCode::V1_ArityShape,
                                &location,
                                format!("argument {} of {p} is `{arg}`, expected {}", i + 1, kind_noun(*kind)),
                            );
                        }
                    }
                }
                None if self.options.strict && !ROLE_NAMES.contains(&p.name()) => {
                    self.report(
                        ViolationCode::V1_ArityShape,
                        &location,
                        format!("{p}: predicate `{}` is not in the database", p.name()),
                    );
                }
                None => {}
            }

            let kinds = resolve_kinds(p, pattern);
            for (arg, kind) in p.args.iter().zip(kinds).skip(1) {
                if let (Some(k), Some(l)) = (kind, arg.as_atom()) {
                    if k.is_label() && !self.defined_labels.contains(l) {
                        self.report(
                            ViolationCode::V2_UndefinedLabel,
                            &location,
                            format!("{p} refers to label `{l}`, which nothing defines"),
                        );
                    }
                }
            }

            if ROLE_NAMES.contains(&p.name()) {
                let instance = p.args.get(1);
                // A predicate the database does not know may be a head too.
                let attached = self.vit.semantics.iter().any(|h| {
                    let head_like = self.index.is_head(h.name())
                        || (self.index.pattern(h.name()).is_none() && !ROLE_NAMES.contains(&h.name()));
                    head_like && h.label() == Some(label) && instance.is_some() && h.args.get(1) == instance
                });
                if !attached {
                    self.report(
                        ViolationCode::V3_RoleAttachment,
                        &location,
                        format!("{p} shares label and instance with no head predicate"),
                    );
                }
            }

            if let Some(declared) = self.index.declared_roles.get(p.name()) {
                let present: BTreeSet<Atom> = self
                    .vit
                    .semantics
                    .iter()
                    .filter(|r| ROLE_NAMES.contains(&r.name()) && r.label() == Some(label))
                    .map(|r| r.functor.clone())
                    .collect();
                if &present != declared {
                    let show = |s: &BTreeSet<Atom>| s.iter().map(Atom::text).collect::<Vec<_>>().join(",");
                    self.report(
                        ViolationCode::V4_RoleDeclaration,
                        &location,
                        format!("roles at {label} are {{{}}}, `{}` declares {{{}}}", show(&present), p.name(), show(declared)),
                    );
                }
            }
        }
    }

    fn main_label(&mut self) {
        let main = &self.vit.main_label;
        if !self.pred_labels.contains(main) {
            self.report(
                ViolationCode::V7_MainLabel,
                format!("main_label/{main}"),
                format!("main label `{main}` labels no semantics predicate"),
            );
        }
    }

    fn sorts(&mut self) {
        for s in &self.vit.sorts {
            let location = s.to_string();
            let (inst, sort) = match (s.name(), s.args.as_slice()) {
                ("s_sort", [Term::Atom(i), sort]) => (i, sort),
                _ => {
                    self.report(ViolationCode::V5_SortMismatch, &location, "expected s_sort(Instance, Sort)");
                    continue;
                }
            };
            if !self.instances.contains(inst) {
                self.report(
                    ViolationCode::V5_SortMismatch,
                    &location,
                    format!("instance `{inst}` does not occur in semantics"),
                );
                continue;
            }
            let Some(parts) = conjuncts(sort) else {
                self.report(ViolationCode::V5_SortMismatch, &location, format!("`{sort}` is not a sort"));
                continue;
            };
            for head in &self.vit.semantics {
                let Some(declared) = self.index.declared_sorts.get(head.name()) else { continue };
                if head.args.get(1).and_then(Term::as_atom) != Some(inst) {
                    continue;
                }
                if !parts.iter().any(|part| self.aliases.accepts(declared, part)) {
                    self.report(
                        ViolationCode::V5_SortMismatch,
                        &location,
                        format!("sort `{sort}` is not accepted by `{}` (sort_of_inst {declared})", head.name()),
                    );
                }
            }
        }
    }

    /// Annotation predicates: `name(Instance, Value...)`.
    fn annotations(&mut self, preds: &'a [Pred]) {
        for p in preds {
            let location = p.to_string();
            match p.arg_atom(0) {
                Some(i) if self.instances.contains(i) => {}
                _ => {
                    self.report(
                        ViolationCode::V9_SyntaxVocabulary,
                        &location,
                        format!("`{}` is not an instance of the semantics", p.args.first().map(Term::to_string).unwrap_or_default()),
                    );
                    continue;
                }
            }
            self.vocabulary(p, &location);
        }
    }

    fn vocabulary(&mut self, p: &Pred, location: &str) {
        let Some(allowed) = vocabulary(p.name()) else { return };
        let value = match p.args.as_slice() {
            [_, v] => v.to_string(),
            _ => {
                self.report(ViolationCode::V9_SyntaxVocabulary, location, format!("`{}` takes two arguments", p.name()));
                return;
            }
        };
        if !allowed.contains(&value.as_str()) {
            self.report(
                ViolationCode::V9_SyntaxVocabulary,
                location,
                format!("`{value}` is not a value of {} ({})", p.name(), allowed.join(", ")),
            );
        }
    }

    fn scope(&mut self) {
        let holes: HashSet<&Atom> = self.holes.iter().copied().collect();
        let mut plugs: HashMap<&Atom, usize> = HashMap::new();
        for c in &self.vit.scope {
            let location = c.to_string();
            let (a, b) = match (c.name(), c.args.as_slice()) {
                ("ccom_plug" | "leq", [a, b]) => (a.as_atom(), b.as_atom()),
                _ => {
                    self.report(ViolationCode::V6_ScopeReference, &location, "expected ccom_plug/2 or leq/2");
                    continue;
                }
            };
            let is_label = |x: Option<&Atom>| x.is_some_and(|x| self.defined_labels.contains(x));
            let is_hole = |x: Option<&Atom>| x.is_some_and(|x| holes.contains(x));
            let problem = if c.name() == "ccom_plug" {
                if !is_hole(a) {
                    Some(format!("`{}` is not a hole", c.args[0]))
                } else if !is_label(b) {
                    Some(format!("`{}` is not a defined label", c.args[1]))
                } else {
                    None
                }
            } else if !is_label(a) {
                Some(format!("`{}` is not a defined label", c.args[0]))
            } else if !is_hole(b) && !is_label(b) {
                Some(format!("`{}` is neither a hole nor a defined label", c.args[1]))
            } else {
                None
            };
            match problem {
                Some(detail) => self.report(ViolationCode::V6_ScopeReference, &location, detail),
                None if c.name() == "ccom_plug" => *plugs.entry(a.unwrap()).or_default() += 1,
                None => {}
            }
        }
        for h in self.holes.clone() {
            match plugs.get(h).copied().unwrap_or(0) {
                1 => {}
                0 => self.report(ViolationCode::V6_ScopeReference, format!("scope/{h}"), format!("hole `{h}` has no ccom_plug")),
                n => self.report(ViolationCode::V6_ScopeReference, format!("scope/{h}"), format!("hole `{h}` has {n} ccom_plug facts")),
            }
        }
    }

    fn prosody(&mut self) {
        for p in &self.vit.prosody {
            let location = p.to_string();
            match p.arg_atom(0) {
                Some(l) if self.defined_labels.contains(l) => {}
                _ => {
                    self.report(
                        ViolationCode::V2_UndefinedLabel,
                        &location,
                        format!("`{}` is not a defined label", p.args.first().map(Term::to_string).unwrap_or_default()),
                    );
                    continue;
                }
            }
            self.vocabulary(p, &location);
        }
    }

    fn groups(&mut self) {
        let mut owner: HashMap<&Atom, &Atom> = HashMap::new();
        for g in &self.vit.groups {
            let location = g.to_string();
            let (label, members) = match (g.name(), g.args.as_slice()) {
                ("sem_group", [Term::Atom(l), Term::List(ms)]) if ms.iter().all(|m| m.as_atom().is_some()) => (l, ms),
                _ => {
                    self.report(ViolationCode::V8_GroupShape, &location, "expected sem_group(Label, [Label...])");
                    continue;
                }
            };
            for m in members.iter().filter_map(Term::as_atom) {
                if !self.defined_labels.contains(m) || m == label {
                    self.report(ViolationCode::V8_GroupShape, &location, format!("member `{m}` is not a defined label"));
                } else if let Some(other) = owner.insert(m, label) {
                    self.report(
                        ViolationCode::V8_GroupShape,
                        &location,
                        format!("member `{m}` already belongs to group `{other}`"),
                    );
                }
            }
        }
    }
}

/// Runs every check. Violations come in slot order, then source order.
pub fn validate_with(vit: &Vit, index: &PatternIndex, aliases: &SortAliasTable, options: ValidateOptions) -> Vec<Violation> {
    let mut c = Checker::new(vit, index, aliases, options);
    c.semantics();
    c.main_label();
    c.sorts();
    c.annotations(&vit.discourse);
    c.annotations(&vit.syntax);
    c.annotations(&vit.tense_aspect);
    c.scope();
    c.prosody();
    c.groups();
    c.out
}
