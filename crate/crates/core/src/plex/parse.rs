use indexmap::IndexMap;

use super::{BaseEntry, FeatureDecl, LexClass, LexError, Lexicon, ValueExpr};
use crate::lex::{Cursor, Pos, Punct, SyntaxError, Tok};
use crate::Atom;

/// Parses lexicon source into classes and bases, preserving source order.
///
/// Only syntax and name uniqueness are checked here; hierarchy problems are
/// reported by [`check_hierarchy`](super::check_hierarchy) and value problems
/// surface during expansion.
pub fn parse_lexicon_source(text: &str) -> Result<Lexicon, LexError> {
    let mut cur = Cursor::new(text)?;
    let mut lex = Lexicon::default();
    while !cur.at_eof() {
        let pos = cur.pos();
        if cur.eat_word("class") {
            let class = parse_class(&mut cur)?;
            if lex.classes.contains_key(&class.name) {
                return Err(LexError::DuplicateClass { name: class.name, pos });
            }
            lex.classes.insert(class.name.clone(), class);
        } else if cur.eat_word("base") {
            let base = parse_base(&mut cur)?;
            if lex.bases.iter().any(|b| b.name == base.name) {
                return Err(LexError::DuplicateBase { name: base.name, pos });
            }
            lex.bases.push(base);
        } else {
            return Err(cur.unexpected("`class` or `base`").into());
        }
    }
    Ok(lex)
}

fn parse_class(cur: &mut Cursor) -> Result<LexClass, LexError> {
    let (name, _) = cur.atom("class name")?;
    cur.expect(Punct::ClassOpen)?;
    let parent = if cur.eat_word("top") {
        None
    } else {
        Some(cur.atom("parent class or `top`")?.0)
    };
    if *cur.peek() == Tok::Punct(Punct::Comma) {
        return Err(SyntaxError::new(cur.pos(), "a class has at most one parent").into());
    }
    cur.expect(Punct::ClassClose)?;

    let mut features = Vec::new();
    let mut fixed_values = IndexMap::new();
    for (feature, value, pos) in parse_body(cur)? {
        if features.iter().any(|d: &FeatureDecl| d.name == feature) {
            return Err(LexError::DuplicateFeature {
                owner: name,
                feature,
                pos,
            });
        }
        let appropriateness = match value {
            ValueExpr::Lit(_) => {
                fixed_values.insert(feature.clone(), value);
                ValueExpr::Top
            }
            other => other,
        };
        features.push(FeatureDecl {
            name: feature,
            appropriateness,
        });
    }
    Ok(LexClass {
        name,
        parent,
        features,
        fixed_values,
    })
}

fn parse_base(cur: &mut Cursor) -> Result<BaseEntry, LexError> {
    let (name, _) = cur.atom("base name")?;
    cur.expect(Punct::BaseOpen)?;
    let (class_name, _) = cur.atom("class name")?;
    cur.expect(Punct::BaseClose)?;
    let mut assignments: Vec<(Atom, ValueExpr)> = Vec::new();
    for (feature, value, pos) in parse_body(cur)? {
        if assignments.iter().any(|(f, _)| *f == feature) {
            return Err(LexError::DuplicateFeature {
                owner: name,
                feature,
                pos,
            });
        }
        assignments.push((feature, value));
    }
    Ok(BaseEntry {
        name,
        class_name,
        assignments,
    })
}

/// `f: v & f: v .` (possibly empty) up to and including the final dot.
fn parse_body(cur: &mut Cursor) -> Result<Vec<(Atom, ValueExpr, Pos)>, SyntaxError> {
    let mut items = Vec::new();
    if cur.eat(Punct::Dot) {
        return Ok(items);
    }
    loop {
        let (feature, pos) = cur.atom("feature name")?;
        cur.expect(Punct::Colon)?;
        let value = parse_value(cur)?;
        items.push((feature, value, pos));
        if cur.eat(Punct::Amp) {
            continue;
        }
        cur.expect(Punct::Dot)?;
        return Ok(items);
    }
}

pub(crate) fn parse_value(cur: &mut Cursor) -> Result<ValueExpr, SyntaxError> {
    let pos = cur.pos();
    let first = parse_unary(cur)?;
    if *cur.peek() != Tok::Punct(Punct::Or) {
        return Ok(first);
    }
    let mut items = vec![first];
    while cur.eat(Punct::Or) {
        items.push(parse_unary(cur)?);
    }
    ValueExpr::or(items).map_err(|e| SyntaxError::new(pos, e.to_string()))
}

fn parse_unary(cur: &mut Cursor) -> Result<ValueExpr, SyntaxError> {
    let pos = cur.pos();
    if cur.eat(Punct::Not) {
        let inner = parse_unary(cur)?;
        return ValueExpr::not(inner).map_err(|e| SyntaxError::new(pos, e.to_string()));
    }
    if cur.eat(Punct::LParen) {
        let inner = parse_value(cur)?;
        cur.expect(Punct::RParen)?;
        return Ok(inner);
    }
    if cur.eat_word("top") {
        return Ok(ValueExpr::Top);
    }
    Ok(ValueExpr::Lit(cur.atom("a value")?.0))
}
