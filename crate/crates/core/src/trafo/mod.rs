//! First-match transformation rules ("trafos") that turn expanded entries
//! into output records.
//!
//! A rule file is a list of
//!
//! ```text
//! rule NAME requires f1, f2, ... emits "TEMPLATE" [with g1, g2, ...] .
//! ```
//!
//! A rule matches an entry when every required feature has a value other
//! than `top`. The `with` clause gives the features substituted for the
//! template's `~w` directives, in order and possibly repeated; it defaults to
//! the `requires` list. `with` may name features a rule does not require:
//! unset ones print as `-`. The pseudo-features `base` and `class` give the
//! base name and its class. Adjacent string literals are concatenated.

mod template;

use thiserror::Error;

use crate::lex::{Cursor, Pos, Punct, SyntaxError, Tok};
use crate::plex::{expand_base, ExpandedEntry, LexError, Lexicon, ValueExpr};
use crate::Atom;

pub use template::{render_template, render_value, Segment, Template, TemplateError};

/// Rules that build `sem_lex/2` records for the semantic lexicon.
pub const SEMLEX_RULES: &str = include_str!("../../data/semlex.trafo");
/// Rules that build the one-line-per-lemma table.
pub const TABLE_RULES: &str = include_str!("../../data/table.trafo");

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TrafoRule {
    pub name: Atom,
    pub required_features: Vec<Atom>,
    pub template: Template,
    /// Features substituted into the template, in order.
    pub bindings: Vec<Atom>,
}

impl TrafoRule {
    pub fn new(
        name: Atom,
        required_features: Vec<Atom>,
        template: Template,
        bindings: Option<Vec<Atom>>,
    ) -> Result<TrafoRule, TemplateError> {
        let bindings = bindings.unwrap_or_else(|| required_features.clone());
        if template.substitutions() != bindings.len() {
            return Err(TemplateError::Arity {
                expected: template.substitutions(),
                found: bindings.len(),
            });
        }
        Ok(TrafoRule {
            name,
            required_features,
            template,
            bindings,
        })
    }

    pub fn matches(&self, entry: &ExpandedEntry) -> bool {
        self.required_features
            .iter()
            .all(|f| !lookup(entry, f.text()).is_top())
    }

    fn render(&self, entry: &ExpandedEntry) -> String {
        let values: Vec<ValueExpr> = self.bindings.iter().map(|f| lookup(entry, f.text())).collect();
        render_template(&self.template, &values).expect("binding count checked at construction")
    }
}

fn lookup(entry: &ExpandedEntry, feature: &str) -> ValueExpr {
    match feature {
        "base" => ValueExpr::Lit(entry.base_name.clone()),
        "class" => ValueExpr::Lit(entry.class_name().clone()),
        f => entry.value(f).clone(),
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct RuleSet {
    pub rules: Vec<TrafoRule>,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RuleError {
    #[error(transparent)]
    Syntax(#[from] SyntaxError),
    #[error("{pos}: rule `{name}` is defined twice")]
    DuplicateRule { name: Atom, pos: Pos },
    #[error("{pos}: rule `{name}`: {source}")]
    Template {
        name: Atom,
        pos: Pos,
        source: TemplateError,
    },
}

impl RuleSet {
    pub fn parse(text: &str) -> Result<RuleSet, RuleError> {
        let mut cur = Cursor::new(text)?;
        let mut rules: Vec<TrafoRule> = Vec::new();
        while !cur.at_eof() {
            let pos = cur.pos();
            cur.expect_word("rule")?;
            let (name, _) = cur.atom("rule name")?;
            let required = if cur.eat_word("requires") {
                feature_list(&mut cur)?
            } else {
                Vec::new()
            };
            cur.expect_word("emits")?;
            let mut format = match cur.next() {
                (Tok::Str(s), _) => s,
                (other, at) => {
                    return Err(SyntaxError::new(at, format!("expected a format string, found {other}")).into())
                }
            };
            while let Tok::Str(s) = cur.peek().clone() {
                cur.next();
                format.push_str(&s);
            }
            let bindings = if cur.eat_word("with") {
                Some(feature_list(&mut cur)?)
            } else {
                None
            };
            cur.expect(Punct::Dot)?;

            let template_err = |source| RuleError::Template {
                name: name.clone(),
                pos,
                source,
            };
            let template = Template::parse(&format).map_err(template_err)?;
            let rule = TrafoRule::new(name.clone(), required, template, bindings).map_err(template_err)?;
            if rules.iter().any(|r| r.name == rule.name) {
                return Err(RuleError::DuplicateRule { name, pos });
            }
            rules.push(rule);
        }
        Ok(RuleSet { rules })
    }

    pub fn semlex() -> RuleSet {
        RuleSet::parse(SEMLEX_RULES).expect("shipped semlex rules are well-formed")
    }

    pub fn table() -> RuleSet {
        RuleSet::parse(TABLE_RULES).expect("shipped table rules are well-formed")
    }
}

fn feature_list(cur: &mut Cursor) -> Result<Vec<Atom>, SyntaxError> {
    let mut out = Vec::new();
    if !matches!(cur.peek(), Tok::Word(_) | Tok::Quoted(_)) || matches!(cur.peek(), Tok::Word(w) if w == "emits") {
        return Ok(out);
    }
    loop {
        out.push(cur.atom("feature name")?.0);
        if !cur.eat(Punct::Comma) {
            return Ok(out);
        }
    }
}

/// No rule in the set matched this base.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("no trafo rule matches base `{base}`")]
pub struct NoMatch {
    pub base: Atom,
}

/// Renders `entry` with the first rule that matches it.
pub fn apply_rules(rules: &RuleSet, entry: &ExpandedEntry) -> Result<String, NoMatch> {
    rules
        .rules
        .iter()
        .find(|r| r.matches(entry))
        .map(|r| r.render(entry))
        .ok_or_else(|| NoMatch {
            base: entry.base_name.clone(),
        })
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Emission {
    pub text: String,
    /// Bases that no rule matched; they contribute no output.
    pub warnings: Vec<NoMatch>,
}

/// Expands every base in lexicon order and concatenates the rendered records.
pub fn emit_outputs(lexicon: &Lexicon, rules: &RuleSet) -> Result<Emission, LexError> {
    let mut emission = Emission::default();
    for base in &lexicon.bases {
        let entry = expand_base(lexicon, base.name.text())?;
        match apply_rules(rules, &entry) {
            Ok(text) => emission.text.push_str(&text),
            Err(warning) => emission.warnings.push(warning),
        }
    }
    Ok(emission)
}
