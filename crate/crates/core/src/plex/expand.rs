use indexmap::IndexMap;

use super::{check_value, ExpandedEntry, FeatureDecl, LexClass, LexError, Lexicon, ValueExpr};
use crate::Atom;

/// One feature of a class as seen after inheritance.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EffectiveFeature {
    pub decl: FeatureDecl,
    /// The value fixed by the class or one of its ancestors, if any.
    pub fixed: Option<ValueExpr>,
    /// The class that introduced the feature.
    pub declared_in: Atom,
}

/// Root-first chain of classes ending in `class_name`.
fn class_chain<'a>(lex: &'a Lexicon, class_name: &Atom) -> Result<Vec<&'a LexClass>, LexError> {
    let mut chain = Vec::new();
    let mut at = lex
        .classes
        .get(class_name)
        .ok_or_else(|| LexError::UnknownClass(class_name.clone()))?;
    loop {
        if chain.iter().any(|c: &&LexClass| c.name == at.name) {
            return Err(LexError::Cycle(at.name.clone()));
        }
        chain.push(at);
        match &at.parent {
            None => break,
            Some(parent) => {
                at = lex.classes.get(parent).ok_or_else(|| LexError::UnknownParent {
                    class: at.name.clone(),
                    parent: parent.clone(),
                })?;
            }
        }
    }
    chain.reverse();
    Ok(chain)
}

/// The inherited feature set of a class: root class first, declaration order
/// within each class. A subclass that mentions an inherited feature either
/// fixes its value (a literal) or narrows its appropriateness (a
/// disjunction or negation); both must satisfy the inherited condition.
pub fn effective_features(lex: &Lexicon, class_name: &Atom) -> Result<Vec<EffectiveFeature>, LexError> {
    let mut out: Vec<EffectiveFeature> = Vec::new();
    for class in class_chain(lex, class_name)? {
        for decl in &class.features {
            let fixed = class.fixed_values.get(&decl.name);
            let violation = |value: &ValueExpr| LexError::AppropriatenessViolation {
                entry: class.name.clone(),
                feature: decl.name.clone(),
                value: value.clone(),
            };
            match out.iter_mut().find(|f| f.decl.name == decl.name) {
                Some(existing) => {
                    if let Some(value) = fixed {
                        if !check_value(&existing.decl.appropriateness, value) {
                            return Err(violation(value));
                        }
                        existing.fixed = Some(value.clone());
                    } else if !decl.appropriateness.is_top() {
                        if !check_value(&existing.decl.appropriateness, &decl.appropriateness) {
                            return Err(violation(&decl.appropriateness));
                        }
                        if let Some(value) = &existing.fixed {
                            if !check_value(&decl.appropriateness, value) {
                                return Err(violation(value));
                            }
                        }
                        existing.decl.appropriateness = decl.appropriateness.clone();
                    }
                }
                None => {
                    if let Some(value) = fixed {
                        if !check_value(&decl.appropriateness, value) {
                            return Err(violation(value));
                        }
                    }
                    out.push(EffectiveFeature {
                        decl: decl.clone(),
                        fixed: fixed.cloned(),
                        declared_in: class.name.clone(),
                    });
                }
            }
        }
    }
    Ok(out)
}

/// Expands a base: inherited fixed values overlaid with the base's own
/// assignments, every other feature left at `Top`.
///
/// Features a class fixes to a literal are not open to bases; assigning a
/// different value is a [`LexError::FixedValueOverride`].
pub fn expand_base(lex: &Lexicon, base_name: &str) -> Result<ExpandedEntry, LexError> {
    let base = lex
        .base(base_name)
        .ok_or_else(|| LexError::UnknownBase(Atom::new(base_name)))?;
    let features = effective_features(lex, &base.class_name)?;
    let class_chain = class_chain(lex, &base.class_name)?
        .into_iter()
        .map(|c| c.name.clone())
        .collect();

    let mut values: IndexMap<Atom, ValueExpr> = features
        .iter()
        .map(|f| (f.decl.name.clone(), f.fixed.clone().unwrap_or(ValueExpr::Top)))
        .collect();

    for (feature, value) in &base.assignments {
        let Some(eff) = features.iter().find(|f| f.decl.name == *feature) else {
            return Err(LexError::UnknownFeature {
                entry: base.name.clone(),
                feature: feature.clone(),
            });
        };
        if let Some(fixed) = &eff.fixed {
            if fixed != value {
                return Err(LexError::FixedValueOverride {
                    entry: base.name.clone(),
                    feature: feature.clone(),
                    fixed: fixed.clone(),
                });
            }
        }
        if !check_value(&eff.decl.appropriateness, value) {
            return Err(LexError::AppropriatenessViolation {
                entry: base.name.clone(),
                feature: feature.clone(),
                value: value.clone(),
            });
        }
        values.insert(feature.clone(), value.clone());
    }

    Ok(ExpandedEntry {
        base_name: base.name.clone(),
        class_chain,
        values,
    })
}
