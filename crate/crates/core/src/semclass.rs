//! Abstract semantic classes and the predicate schemes ("predschemes") they
//! contribute to interface terms.
//!
//! A catalog is read from a small declarative format:
//!
//! ```text
//! semclass transitive_verb :
//!    head 'L,I' &
//!    role role_a1 'L,I,I1' &
//!    role role_a2 'L,I,I2' .
//! closed decl 'L,H' .
//! ```
//!
//! [`Catalog::builtin`] ships the classes needed by the demo lexicon and the
//! example interface term.

use std::fmt;

use indexmap::IndexMap;
use thiserror::Error;

use crate::lex::{Cursor, Pos, Punct, SyntaxError, Tok};
use crate::plex::{ExpandedEntry, ValueExpr};
use crate::vit::Term;
use crate::Atom;

const BUILTIN: &str = include_str!("../data/catalog.sc");

/// The thematic roles a role placeholder may resolve to.
pub const ROLE_NAMES: [&str; 3] = ["arg1", "arg2", "arg3"];

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ArgKind {
    Label,
    Instance,
    Hole,
    RestrictorLabel,
    Cardinality,
}

impl ArgKind {
    pub fn letter(self) -> char {
        match self {
            ArgKind::Label => 'L',
            ArgKind::Instance => 'I',
            ArgKind::Hole => 'H',
            ArgKind::RestrictorLabel => 'R',
            ArgKind::Cardinality => 'N',
        }
    }

    /// Parses a kind string such as `L,I,I1`. Digits after the kind letter
    /// only name the variable and are ignored.
    pub fn parse_list(text: &str) -> Result<Vec<ArgKind>, String> {
        text.split(',')
            .map(|part| {
                let part = part.trim();
                let mut chars = part.chars();
                let kind = match chars.next() {
                    Some('L') => ArgKind::Label,
                    Some('I') => ArgKind::Instance,
                    Some('H') => ArgKind::Hole,
                    Some('R') => ArgKind::RestrictorLabel,
                    Some('N') => ArgKind::Cardinality,
                    _ => return Err(format!("bad argument kind `{part}`")),
                };
                if !chars.all(|c| c.is_ascii_digit()) {
                    return Err(format!("bad argument kind `{part}`"));
                }
                Ok(kind)
            })
            .collect()
    }

    /// Label-valued kinds, including restrictors.
    pub fn is_label(self) -> bool {
        matches!(self, ArgKind::Label | ArgKind::RestrictorLabel)
    }
}

/// Argument kind read off an identifier's shape: `l7` is a label, `i7` an
/// instance, `h7` a hole, an integer a cardinality.
pub fn conventional_kind(term: &Term) -> Option<ArgKind> {
    match term {
        Term::Int(_) => Some(ArgKind::Cardinality),
        Term::Atom(a) => {
            let text = a.text();
            let (first, rest) = text.split_at(text.chars().next()?.len_utf8());
            if rest.is_empty() || !rest.chars().all(|c| c.is_ascii_digit()) {
                return None;
            }
            match first {
                "l" => Some(ArgKind::Label),
                "i" => Some(ArgKind::Instance),
                "h" => Some(ArgKind::Hole),
                _ => None,
            }
        }
        _ => None,
    }
}

/// How a non-head predicate of a scheme gets its name.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ExtraName {
    Fixed(Atom),
    /// Named by the value of this role feature (`role_a1`, ...).
    Role(Atom),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PredScheme {
    /// Fixed head predicate name; `None` means the entry's `predname`.
    pub head_name: Option<Atom>,
    pub head_template: Vec<ArgKind>,
    pub extra_predicates: Vec<(ExtraName, Vec<ArgKind>)>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SemanticClass {
    pub name: Atom,
    pub predscheme: PredScheme,
    /// Role features in the order their placeholders appear.
    pub role_slots: Vec<Atom>,
}

impl SemanticClass {
    pub fn new(name: Atom, predscheme: PredScheme) -> Result<SemanticClass, String> {
        let templates = std::iter::once(&predscheme.head_template)
            .chain(predscheme.extra_predicates.iter().map(|(_, k)| k));
        for kinds in templates {
            if kinds.first() != Some(&ArgKind::Label) {
                return Err(format!("class `{name}`: every template must start with a label"));
            }
        }
        let role_slots = predscheme
            .extra_predicates
            .iter()
            .filter_map(|(n, _)| match n {
                ExtraName::Role(slot) => Some(slot.clone()),
                ExtraName::Fixed(_) => None,
            })
            .collect();
        Ok(SemanticClass {
            name,
            predscheme,
            role_slots,
        })
    }
}

/// A concrete predicate signature.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PredPattern {
    pub predicate_name: Atom,
    pub arg_kinds: Vec<ArgKind>,
    /// The base that produced the pattern; `None` for catalog predicates.
    pub source_base: Option<Atom>,
}

impl PredPattern {
    pub fn arity(&self) -> usize {
        self.arg_kinds.len()
    }
}

impl fmt::Display for PredPattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let kinds: Vec<String> = self.arg_kinds.iter().map(|k| k.letter().to_string()).collect();
        write!(f, "{}({})", self.predicate_name, kinds.join(","))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CatalogError {
    #[error(transparent)]
    Syntax(#[from] SyntaxError),
    #[error("{pos}: `{name}` is defined twice")]
    Duplicate { name: Atom, pos: Pos },
    #[error("{pos}: {message}")]
    Invalid { message: String, pos: Pos },
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SemClassError {
    #[error("base `{base}` has no known semantic class (semclass is {semclass})")]
    UnknownSemClass { base: Atom, semclass: ValueExpr },
    #[error("base `{base}` leaves role `{slot}` open, but its predscheme needs it")]
    MissingRole { base: Atom, slot: Atom },
    #[error("base `{base}` fills role `{slot}` with `{value}`, which is not a thematic role")]
    InvalidRole { base: Atom, slot: Atom, value: ValueExpr },
    #[error("base `{base}` has no predname")]
    MissingPredname { base: Atom },
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Catalog {
    pub classes: IndexMap<Atom, SemanticClass>,
    pub closed_class_patterns: IndexMap<Atom, PredPattern>,
}

impl Catalog {
    pub fn builtin() -> Catalog {
        Catalog::parse(BUILTIN).expect("builtin catalog is well-formed")
    }

    pub fn class(&self, name: &str) -> Option<&SemanticClass> {
        self.classes.get(name)
    }

    /// The signature of a predicate whose name the catalog alone determines:
    /// closed-class predicates and fixed-name scheme predicates such as `whq`.
    pub fn known_pattern(&self, predicate: &str) -> Option<PredPattern> {
        if let Some(p) = self.closed_class_patterns.get(predicate) {
            return Some(p.clone());
        }
        self.classes.values().find_map(|class| {
            let scheme = &class.predscheme;
            let head = scheme
                .head_name
                .as_ref()
                .map(|n| (n, &scheme.head_template));
            let extras = scheme.extra_predicates.iter().filter_map(|(n, k)| match n {
                ExtraName::Fixed(n) => Some((n, k)),
                ExtraName::Role(_) => None,
            });
            head.into_iter()
                .chain(extras)
                .find(|(n, _)| n.text() == predicate)
                .map(|(n, kinds)| PredPattern {
                    predicate_name: n.clone(),
                    arg_kinds: kinds.clone(),
                    source_base: None,
                })
        })
    }

    pub fn parse(text: &str) -> Result<Catalog, CatalogError> {
        let mut cur = Cursor::new(text)?;
        let mut catalog = Catalog::default();
        while !cur.at_eof() {
            let pos = cur.pos();
            if cur.eat_word("semclass") {
                let (name, _) = cur.atom("class name")?;
                cur.expect(Punct::Colon)?;
                let scheme = parse_scheme(&mut cur)?;
                if catalog.is_defined(&name) {
                    return Err(CatalogError::Duplicate { name, pos });
                }
                let class = SemanticClass::new(name.clone(), scheme)
                    .map_err(|message| CatalogError::Invalid { message, pos })?;
                catalog.classes.insert(name, class);
            } else if cur.eat_word("closed") {
                let (name, _) = cur.atom("predicate name")?;
                let arg_kinds = parse_kinds(&mut cur)?;
                cur.expect(Punct::Dot)?;
                if catalog.is_defined(&name) {
                    return Err(CatalogError::Duplicate { name, pos });
                }
                if arg_kinds.first() != Some(&ArgKind::Label) {
                    return Err(CatalogError::Invalid {
                        message: format!("`{name}` must take a label first"),
                        pos,
                    });
                }
                catalog.closed_class_patterns.insert(
                    name.clone(),
                    PredPattern {
                        predicate_name: name,
                        arg_kinds,
                        source_base: None,
                    },
                );
            } else {
                return Err(cur.unexpected("`semclass` or `closed`").into());
            }
        }
        Ok(catalog)
    }

    fn is_defined(&self, name: &Atom) -> bool {
        self.classes.contains_key(name) || self.closed_class_patterns.contains_key(name)
    }
}

fn parse_kinds(cur: &mut Cursor) -> Result<Vec<ArgKind>, CatalogError> {
    let pos = cur.pos();
    match cur.next().0 {
        Tok::Quoted(text) => {
            ArgKind::parse_list(&text).map_err(|message| CatalogError::Invalid { message, pos })
        }
        other => Err(SyntaxError::new(pos, format!("expected a kind string like 'L,I', found {other}")).into()),
    }
}

fn parse_scheme(cur: &mut Cursor) -> Result<PredScheme, CatalogError> {
    let pos = cur.pos();
    let mut head: Option<(Option<Atom>, Vec<ArgKind>)> = None;
    let mut extras = Vec::new();
    loop {
        let item_pos = cur.pos();
        if cur.eat_word("head") {
            let name = match cur.peek() {
                Tok::Word(_) => Some(cur.atom("predicate name")?.0),
                _ => None,
            };
            let kinds = parse_kinds(cur)?;
            if head.replace((name, kinds)).is_some() {
                return Err(CatalogError::Invalid {
                    message: "a predscheme has exactly one head".into(),
                    pos: item_pos,
                });
            }
        } else if cur.eat_word("role") {
            let (slot, _) = cur.atom("role feature")?;
            extras.push((ExtraName::Role(slot), parse_kinds(cur)?));
        } else if cur.eat_word("pred") {
            let (name, _) = cur.atom("predicate name")?;
            extras.push((ExtraName::Fixed(name), parse_kinds(cur)?));
        } else {
            return Err(cur.unexpected("`head`, `role` or `pred`").into());
        }
        if cur.eat(Punct::Amp) {
            continue;
        }
        cur.expect(Punct::Dot)?;
        break;
    }
    let (head_name, head_template) = head.ok_or_else(|| CatalogError::Invalid {
        message: "predscheme without a head".into(),
        pos,
    })?;
    Ok(PredScheme {
        head_name,
        head_template,
        extra_predicates: extras,
    })
}

/// Instantiates an entry's predscheme: the head is named by `predname`
/// (unless the scheme fixes it) and every role placeholder by the value of
/// its role feature.
pub fn predscheme_instances(entry: &ExpandedEntry, catalog: &Catalog) -> Result<Vec<PredPattern>, SemClassError> {
    let semclass = entry.value("semclass");
    let class = semclass
        .as_lit()
        .and_then(|name| catalog.class(name.text()))
        .ok_or_else(|| SemClassError::UnknownSemClass {
            base: entry.base_name.clone(),
            semclass: semclass.clone(),
        })?;
    let scheme = &class.predscheme;
    let source_base = Some(entry.base_name.clone());

    let head_name = match &scheme.head_name {
        Some(n) => n.clone(),
        None => entry
            .value("predname")
            .as_lit()
            .cloned()
            .ok_or_else(|| SemClassError::MissingPredname {
                base: entry.base_name.clone(),
            })?,
    };
    let mut out = vec![PredPattern {
        predicate_name: head_name,
        arg_kinds: scheme.head_template.clone(),
        source_base: source_base.clone(),
    }];
    for (name, kinds) in &scheme.extra_predicates {
        let predicate_name = match name {
            ExtraName::Fixed(n) => n.clone(),
            ExtraName::Role(slot) => {
                let value = entry.value(slot.text());
                match value {
                    ValueExpr::Top => {
                        return Err(SemClassError::MissingRole {
                            base: entry.base_name.clone(),
                            slot: slot.clone(),
                        })
                    }
                    ValueExpr::Lit(role) if ROLE_NAMES.contains(&role.text()) => role.clone(),
                    other => {
                        return Err(SemClassError::InvalidRole {
                            base: entry.base_name.clone(),
                            slot: slot.clone(),
                            value: other.clone(),
                        })
                    }
                }
            }
        };
        out.push(PredPattern {
            predicate_name,
            arg_kinds: kinds.clone(),
            source_base: source_base.clone(),
        });
    }
    Ok(out)
}
