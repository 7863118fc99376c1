use std::fmt;

use crate::atom::{is_ident, quote};
use crate::Atom;

/// Prolog-style term as used inside interface terms.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Term {
    Atom(Atom),
    Int(i64),
    /// Capitalized or `_`-prefixed name.
    Var(String),
    /// Functor with at least one argument; `&(a,b)` is an ordinary compound.
    Compound(Atom, Vec<Term>),
    List(Vec<Term>),
}

impl Term {
    pub fn atom(text: &str) -> Term {
        Term::Atom(Atom::new(text))
    }

    pub fn as_atom(&self) -> Option<&Atom> {
        match self {
            Term::Atom(a) => Some(a),
            _ => None,
        }
    }

    pub fn as_list(&self) -> Option<&[Term]> {
        match self {
            Term::List(items) => Some(items),
            _ => None,
        }
    }
}

const SYMBOL_CHARS: &str = "+-*/\\^<>=~:?@#&$";

pub(crate) fn is_symbol_char(c: char) -> bool {
    SYMBOL_CHARS.contains(c)
}

/// Atom spelling for interface terms: quoted only when it has to be.
pub(crate) fn atom_source(atom: &Atom) -> String {
    let text = atom.text();
    if is_ident(text) || (!text.is_empty() && text.chars().all(is_symbol_char)) {
        text.to_string()
    } else {
        quote(text)
    }
}

fn write_args(f: &mut fmt::Formatter<'_>, items: &[Term]) -> fmt::Result {
    for (i, item) in items.iter().enumerate() {
        if i > 0 {
            f.write_str(",")?;
        }
        write!(f, "{item}")?;
    }
    Ok(())
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Term::Atom(a) => f.write_str(&atom_source(a)),
            Term::Int(n) => write!(f, "{n}"),
            Term::Var(v) => f.write_str(v),
            Term::Compound(functor, args) => {
                write!(f, "{}(", atom_source(functor))?;
                write_args(f, args)?;
                f.write_str(")")
            }
            Term::List(items) => {
                f.write_str("[")?;
                write_args(f, items)?;
                f.write_str("]")
            }
        }
    }
}

/// An entry of a list slot: `functor(args...)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Pred {
    pub functor: Atom,
    pub args: Vec<Term>,
}

impl Pred {
    pub fn new(functor: &str, args: Vec<Term>) -> Pred {
        Pred {
            functor: Atom::new(functor),
            args,
        }
    }

    pub fn name(&self) -> &str {
        self.functor.text()
    }

    pub fn arity(&self) -> usize {
        self.args.len()
    }

    pub fn arg_atom(&self, i: usize) -> Option<&Atom> {
        self.args.get(i).and_then(Term::as_atom)
    }

    /// The first argument, which for semantic predicates is the label.
    pub fn label(&self) -> Option<&Atom> {
        self.arg_atom(0)
    }

    pub fn to_term(&self) -> Term {
        Term::Compound(self.functor.clone(), self.args.clone())
    }
}

impl fmt::Display for Pred {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}(", atom_source(&self.functor))?;
        write_args(f, &self.args)?;
        f.write_str(")")
    }
}
