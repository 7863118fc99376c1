use std::collections::HashSet;
use std::fmt;

use super::Lexicon;
use crate::Atom;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum DiagnosticCode {
    UnknownParent,
    Cycle,
    UnknownClass,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Diagnostic {
    pub code: DiagnosticCode,
    /// The class (for `UnknownParent` and `Cycle`) or the missing class a
    /// base refers to (for `UnknownClass`).
    pub name: Atom,
}

impl fmt::Display for Diagnostic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}({})", self.code, self.name.to_source())
    }
}

/// Well-formedness of the class graph and the bases' class references.
///
/// Classes are visited in source order; a cycle is reported once, at the
/// member that comes first in the source.
pub fn check_hierarchy(lex: &Lexicon) -> Vec<Diagnostic> {
    let mut out = Vec::new();
    let mut reported_cycles: HashSet<&Atom> = HashSet::new();

    for class in lex.classes.values() {
        if let Some(parent) = &class.parent {
            if !lex.classes.contains_key(parent) {
                out.push(Diagnostic {
                    code: DiagnosticCode::UnknownParent,
                    name: class.name.clone(),
                });
                continue;
            }
        }
        if reported_cycles.contains(&class.name) {
            continue;
        }
        // Walk upwards; landing back on `class` means it sits on a cycle.
        let mut seen: Vec<&Atom> = vec![&class.name];
        let mut at = class;
        while let Some(parent) = at.parent.as_ref() {
            let Some(next) = lex.classes.get(parent) else { break };
            if next.name == class.name {
                reported_cycles.extend(seen.iter().copied());
                out.push(Diagnostic {
                    code: DiagnosticCode::Cycle,
                    name: class.name.clone(),
                });
                break;
            }
            if seen.contains(&&next.name) {
                // a cycle above us that does not include this class
                break;
            }
            seen.push(&next.name);
            at = next;
        }
    }

    for base in &lex.bases {
        if !lex.classes.contains_key(&base.class_name) {
            out.push(Diagnostic {
                code: DiagnosticCode::UnknownClass,
                name: base.class_name.clone(),
            });
        }
    }
    out
}
