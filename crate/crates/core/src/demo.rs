//! Bundled sample data: a small lexicon with a common noun and a transitive
//! verb, the sort alias table that goes with it, an interface term for
//! "Wir machen einen Termin aus", and a small term with two quantifiers.

use crate::plex::{parse_lexicon_source, Lexicon};
use crate::validate::SortAliasTable;
use crate::vit::{parse_vit, Vit};

pub const LEXICON_SOURCE: &str = include_str!("../data/demo.plex");
pub const SORT_ALIASES: &str = include_str!("../data/sorts.alias");
pub const VIT_SOURCE: &str = include_str!("../data/example.vit");
pub const TWO_QUANTIFIERS_SOURCE: &str = include_str!("../data/two_quantifiers.vit");
pub const CATALOG_SOURCE: &str = include_str!("../data/catalog.sc");

pub fn lexicon() -> Lexicon {
    parse_lexicon_source(LEXICON_SOURCE).expect("demo lexicon parses")
}

pub fn sort_aliases() -> SortAliasTable {
    SortAliasTable::parse(SORT_ALIASES).expect("demo alias table parses")
}

pub fn vit() -> Vit {
    parse_vit(VIT_SOURCE).expect("demo interface term parses")
}

pub fn two_quantifiers() -> Vit {
    parse_vit(TWO_QUANTIFIERS_SOURCE).expect("two-quantifier term parses")
}
