use std::fmt::Write;

use thiserror::Error;

use crate::plex::ValueExpr;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Segment {
    Literal(String),
    /// `~w`: print the next binding.
    Substitute,
    /// `~n`
    Newline,
}

/// A format string with `~w` / `~n` directives (`~~` is a literal tilde).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Template {
    pub segments: Vec<Segment>,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TemplateError {
    #[error("unknown format directive `~{0}`")]
    UnknownDirective(char),
    #[error("format string ends in a lone `~`")]
    TrailingTilde,
    #[error("template has {expected} substitutions but {found} bindings were given")]
    Arity { expected: usize, found: usize },
}

impl Template {
    pub fn parse(format: &str) -> Result<Template, TemplateError> {
        let mut segments = Vec::new();
        let mut literal = String::new();
        let mut chars = format.chars();
        while let Some(c) = chars.next() {
            if c != '~' {
                literal.push(c);
                continue;
            }
            let directive = match chars.next() {
                Some('w') => Segment::Substitute,
                Some('n') => Segment::Newline,
                Some('~') => {
                    literal.push('~');
                    continue;
                }
                Some(other) => return Err(TemplateError::UnknownDirective(other)),
                None => return Err(TemplateError::TrailingTilde),
            };
            if !literal.is_empty() {
                segments.push(Segment::Literal(std::mem::take(&mut literal)));
            }
            segments.push(directive);
        }
        if !literal.is_empty() {
            segments.push(Segment::Literal(literal));
        }
        Ok(Template { segments })
    }

    pub fn substitutions(&self) -> usize {
        self.segments.iter().filter(|s| **s == Segment::Substitute).count()
    }
}

/// Output spelling of a value: atoms unquoted, disjuncts joined by `;`,
/// negation as `~`, and an unset value as `-`.
pub fn render_value(value: &ValueExpr) -> String {
    match value {
        ValueExpr::Top => "-".to_string(),
        ValueExpr::Lit(a) => a.text().to_string(),
        ValueExpr::Or(items) => items.iter().map(render_value).collect::<Vec<_>>().join(";"),
        ValueExpr::Not(inner) => format!("~{}", render_value(inner)),
    }
}

pub fn render_template(template: &Template, bindings: &[ValueExpr]) -> Result<String, TemplateError> {
    let expected = template.substitutions();
    if expected != bindings.len() {
        return Err(TemplateError::Arity {
            expected,
            found: bindings.len(),
        });
    }
    let mut out = String::new();
    let mut next = bindings.iter();
    for segment in &template.segments {
        match segment {
            Segment::Literal(text) => out.push_str(text),
            Segment::Newline => out.push('\n'),
            Segment::Substitute => {
                let value = next.next().expect("arity checked above");
                write!(out, "{}", render_value(value)).unwrap();
            }
        }
    }
    Ok(out)
}
