//! The lexicon formalism: classes with feature appropriateness arranged in a
//! single-inheritance hierarchy, and base entries that instantiate them.
//!
//! Source text looks like this:
//!
//! ```text
//! class verb_c :< semdb_c >:
//!    sort_of_inst: top .
//!
//! base 'ausmachen' :<< transitive_c >>:
//!    sort_of_inst: (communicat_sit \/ mental_sit) &
//!    role_a1: 'arg1' .
//! ```
//!
//! Inside a class body, `f: top` and `f: (a \/ b)` declare a feature and its
//! appropriateness condition, while `f: atom` fixes the value for every
//! instance of the class. Bases fill the remaining open features; see
//! [`expand_base`].

mod expand;
mod hierarchy;
mod parse;
mod print;
mod value;

use indexmap::IndexMap;
use thiserror::Error;

use crate::lex::{Pos, SyntaxError};
use crate::Atom;

pub use expand::{effective_features, expand_base, EffectiveFeature};
pub use hierarchy::{check_hierarchy, Diagnostic, DiagnosticCode};
pub use parse::parse_lexicon_source;
pub use print::print_lexicon;
pub use value::{check_value, ValueError, ValueExpr};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FeatureDecl {
    pub name: Atom,
    pub appropriateness: ValueExpr,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LexClass {
    pub name: Atom,
    /// `None` for classes declared under `top`.
    pub parent: Option<Atom>,
    /// Every feature mentioned in the class body, in source order. Features
    /// whose value the class fixes are declared with `Top` appropriateness
    /// and carry the value in `fixed_values`.
    pub features: Vec<FeatureDecl>,
    pub fixed_values: IndexMap<Atom, ValueExpr>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BaseEntry {
    pub name: Atom,
    pub class_name: Atom,
    pub assignments: Vec<(Atom, ValueExpr)>,
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Lexicon {
    pub classes: IndexMap<Atom, LexClass>,
    pub bases: Vec<BaseEntry>,
}

impl Lexicon {
    pub fn class(&self, name: &str) -> Option<&LexClass> {
        self.classes.get(name)
    }

    pub fn base(&self, name: &str) -> Option<&BaseEntry> {
        self.bases.iter().find(|b| b.name.text() == name)
    }
}

/// A base with every inherited feature resolved.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExpandedEntry {
    pub base_name: Atom,
    /// Root class first, the base's own class last.
    pub class_chain: Vec<Atom>,
    pub values: IndexMap<Atom, ValueExpr>,
}

impl ExpandedEntry {
    /// The value of a feature; `Top` when the feature is absent.
    pub fn value(&self, feature: &str) -> &ValueExpr {
        self.values.get(feature).unwrap_or(&ValueExpr::Top)
    }

    pub fn class_name(&self) -> &Atom {
        self.class_chain.last().expect("class chain is never empty")
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LexError {
    #[error(transparent)]
    Syntax(#[from] SyntaxError),
    #[error("{pos}: duplicate class `{name}`")]
    DuplicateClass { name: Atom, pos: Pos },
    #[error("{pos}: duplicate base `{name}`")]
    DuplicateBase { name: Atom, pos: Pos },
    #[error("{pos}: feature `{feature}` given twice in `{owner}`")]
    DuplicateFeature { owner: Atom, feature: Atom, pos: Pos },
    #[error("unknown class `{0}`")]
    UnknownClass(Atom),
    #[error("class `{class}` names unknown parent `{parent}`")]
    UnknownParent { class: Atom, parent: Atom },
    #[error("class `{0}` is part of an inheritance cycle")]
    Cycle(Atom),
    #[error("unknown base `{0}`")]
    UnknownBase(Atom),
    #[error("`{entry}` assigns feature `{feature}`, which its class does not have")]
    UnknownFeature { entry: Atom, feature: Atom },
    #[error("`{entry}`: value {value} is not appropriate for feature `{feature}`")]
    AppropriatenessViolation {
        entry: Atom,
        feature: Atom,
        value: ValueExpr,
    },
    #[error("`{entry}` overrides `{feature}`, which its class fixes to {fixed}")]
    FixedValueOverride {
        entry: Atom,
        feature: Atom,
        fixed: ValueExpr,
    },
}
