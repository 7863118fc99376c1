use std::fmt::Write;

use super::{Lexicon, ValueExpr};
use crate::Atom;

/// Canonical source text: classes first, then bases, each in source order,
/// one feature per line. Re-parsing the output gives back an equal lexicon.
pub fn print_lexicon(lex: &Lexicon) -> String {
    let mut out = String::new();
    for class in lex.classes.values() {
        let parent = class.parent.as_ref().map_or("top".to_string(), Atom::to_source);
        write!(out, "class {} :< {} >:", class.name.to_source(), parent).unwrap();
        let body = class.features.iter().map(|d| {
            let value = class.fixed_values.get(&d.name).unwrap_or(&d.appropriateness);
            (&d.name, value)
        });
        write_body(&mut out, body);
    }
    for base in &lex.bases {
        write!(
            out,
            "base {} :<< {} >>:",
            base.name.to_source(),
            base.class_name.to_source()
        )
        .unwrap();
        write_body(&mut out, base.assignments.iter().map(|(f, v)| (f, v)));
    }
    out
}

fn write_body<'a>(out: &mut String, items: impl Iterator<Item = (&'a Atom, &'a ValueExpr)>) {
    let items: Vec<_> = items.collect();
    if items.is_empty() {
        out.push_str(" .\n\n");
        return;
    }
    out.push('\n');
    for (i, (feature, value)) in items.iter().enumerate() {
        let sep = if i + 1 == items.len() { " ." } else { " &" };
        writeln!(out, "   {}: {}{}", feature.to_source(), value, sep).unwrap();
    }
    out.push('\n');
}
