use std::fmt;

use crate::Atom;

/// A feature value or appropriateness condition.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum ValueExpr {
    /// The most general value; no restriction.
    Top,
    Lit(Atom),
    /// At least two disjuncts, in source order, no duplicate literals.
    Or(Vec<ValueExpr>),
    Not(Box<ValueExpr>),
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ValueError {
    #[error("`top` cannot appear inside a disjunction or negation")]
    NestedTop,
    #[error("duplicate literal `{0}` in disjunction")]
    DuplicateLiteral(Atom),
    #[error("empty disjunction")]
    EmptyOr,
}

impl ValueExpr {
    pub fn lit(text: &str) -> ValueExpr {
        ValueExpr::Lit(Atom::new(text))
    }

    /// Builds a disjunction, flattening nested ones. A single operand is
    /// returned unchanged.
    pub fn or(items: impl IntoIterator<Item = ValueExpr>) -> Result<ValueExpr, ValueError> {
        let mut flat: Vec<ValueExpr> = Vec::new();
        for item in items {
            match item {
                ValueExpr::Top => return Err(ValueError::NestedTop),
                ValueExpr::Or(inner) => flat.extend(inner),
                other => flat.push(other),
            }
        }
        let mut seen: Vec<&Atom> = Vec::new();
        for item in &flat {
            if let ValueExpr::Lit(a) = item {
                if seen.contains(&a) {
                    return Err(ValueError::DuplicateLiteral(a.clone()));
                }
                seen.push(a);
            }
        }
        match flat.len() {
            0 => Err(ValueError::EmptyOr),
            1 => Ok(flat.pop().unwrap()),
            _ => Ok(ValueExpr::Or(flat)),
        }
    }

    pub fn not(inner: ValueExpr) -> Result<ValueExpr, ValueError> {
        if inner.is_top() {
            return Err(ValueError::NestedTop);
        }
        Ok(ValueExpr::Not(Box::new(inner)))
    }

    pub fn is_top(&self) -> bool {
        matches!(self, ValueExpr::Top)
    }

    pub fn as_lit(&self) -> Option<&Atom> {
        match self {
            ValueExpr::Lit(a) => Some(a),
            _ => None,
        }
    }

    /// Literals in source order, looking through disjunctions and negations.
    pub fn literals(&self) -> Vec<&Atom> {
        let mut out = Vec::new();
        self.collect_literals(&mut out);
        out
    }

    fn collect_literals<'a>(&'a self, out: &mut Vec<&'a Atom>) {
        match self {
            ValueExpr::Top => {}
            ValueExpr::Lit(a) => out.push(a),
            ValueExpr::Or(items) => items.iter().for_each(|i| i.collect_literals(out)),
            ValueExpr::Not(inner) => inner.collect_literals(out),
        }
    }

    /// True when no negation occurs anywhere in the expression.
    pub fn is_not_free(&self) -> bool {
        match self {
            ValueExpr::Top | ValueExpr::Lit(_) => true,
            ValueExpr::Or(items) => items.iter().all(ValueExpr::is_not_free),
            ValueExpr::Not(_) => false,
        }
    }

    /// Whether this condition admits the single literal `x`.
    fn admits(&self, x: &Atom) -> bool {
        match self {
            ValueExpr::Top => true,
            ValueExpr::Lit(a) => a == x,
            ValueExpr::Or(items) => items.iter().any(|i| i.admits(x)),
            ValueExpr::Not(inner) => !inner.admits(x),
        }
    }
}

/// Tests a value against an appropriateness condition.
///
/// A disjunctive value must be a subset of what the condition admits: every
/// disjunct has to pass. A negated value flips the verdict for its operand.
/// Negation is complementation over acceptance, so no closed universe of
/// atoms is assumed.
pub fn check_value(appropriateness: &ValueExpr, value: &ValueExpr) -> bool {
    if appropriateness.is_top() {
        return true;
    }
    match value {
        ValueExpr::Top => true,
        ValueExpr::Lit(x) => appropriateness.admits(x),
        ValueExpr::Or(items) => items.iter().all(|v| check_value(appropriateness, v)),
        ValueExpr::Not(inner) => !check_value(appropriateness, inner),
    }
}

impl fmt::Display for ValueExpr {
    /// Lexicon source syntax: `top`, atoms, `(a \/ b)`, `~a`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ValueExpr::Top => f.write_str("top"),
            ValueExpr::Lit(a) => f.write_str(&a.to_source()),
            ValueExpr::Or(items) => {
                f.write_str("(")?;
                for (i, item) in items.iter().enumerate() {
                    if i > 0 {
                        f.write_str(" \\/ ")?;
                    }
                    write!(f, "{item}")?;
                }
                f.write_str(")")
            }
            ValueExpr::Not(inner) => write!(f, "~{inner}"),
        }
    }
}
