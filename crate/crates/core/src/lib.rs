//! Tools for a semantic lexicon database: a lexicon formalism with
//! inheritance and feature appropriateness, semantic classes with predicate
//! schemes, a rule-driven compiler for semantic lexica and tables, and
//! parsing, validation, and scope resolution for interface terms.
//!
//! The guide in `book/` walks through each part; its code samples run as
//! doc-tests of this crate.

mod atom;
mod lex;

pub mod demo;
pub mod plex;
pub mod scope;
pub mod semclass;
pub mod trafo;
pub mod validate;
pub mod vit;

pub use atom::{is_bare_word, natural_cmp, Atom};
pub use lex::{Pos, SyntaxError};

#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/introduction.md")]
    mod introduction {}
    #[doc = include_str!("../../../book/src/lexicon.md")]
    mod lexicon {}
    #[doc = include_str!("../../../book/src/semantic-classes.md")]
    mod semantic_classes {}
    #[doc = include_str!("../../../book/src/trafo.md")]
    mod trafo {}
    #[doc = include_str!("../../../book/src/interface-terms.md")]
    mod interface_terms {}
    #[doc = include_str!("../../../book/src/validation.md")]
    mod validation {}
    #[doc = include_str!("../../../book/src/scope.md")]
    mod scope {}
    #[doc = include_str!("../../../book/src/cli.md")]
    mod cli {}
}
