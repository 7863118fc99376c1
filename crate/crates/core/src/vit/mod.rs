//! The ten-slot interface term: data model, parser, and canonical printer.
//!
//! ```text
//! vit(segment_description(Id, Flag, 'surface string'),
//!     [semantics...], MainLabel, [sorts...], [discourse...], [syntax...],
//!     [tense_aspect...], [scope...], [prosody...], [groups...])
//! ```
//!
//! The model is schema-light: any predicate may appear in any list slot.
//! Content checks live in [`crate::validate`].

mod parse;
mod term;

use std::fmt::{self, Write};

use thiserror::Error;

use crate::lex::{Pos, SyntaxError};
use crate::Atom;

pub use parse::{parse_term, parse_vit, parse_vits};
pub use term::{Pred, Term};

/// Slot names, indexed from zero (slot 1 is `segment`).
pub const SLOT_NAMES: [&str; 10] = [
    "segment",
    "semantics",
    "main_label",
    "sorts",
    "discourse",
    "syntax",
    "tense_aspect",
    "scope",
    "prosody",
    "groups",
];

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SegmentDescription {
    pub utterance_id: Atom,
    /// Stored as given; its meaning is not interpreted.
    pub mode_flag: Atom,
    pub surface_string: Atom,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Vit {
    pub segment: SegmentDescription,
    /// Labelled predicates; the first argument of each is its label.
    pub semantics: Vec<Pred>,
    pub main_label: Atom,
    pub sorts: Vec<Pred>,
    pub discourse: Vec<Pred>,
    pub syntax: Vec<Pred>,
    pub tense_aspect: Vec<Pred>,
    pub scope: Vec<Pred>,
    pub prosody: Vec<Pred>,
    pub groups: Vec<Pred>,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum VitError {
    #[error(transparent)]
    Syntax(#[from] SyntaxError),
    #[error("{}expected a vit/10 term, found {found}", at_prefix(.pos))]
    NotVit { found: String, pos: Option<Pos> },
    #[error("{}vit term has {found} slots, expected 10", at_prefix(.pos))]
    SlotArity { found: usize, pos: Option<Pos> },
    #[error("{}slot {slot} ({}): {message}", at_prefix(.pos), SLOT_NAMES[*.slot - 1])]
    SlotShape {
        slot: usize,
        message: String,
        pos: Option<Pos>,
    },
}

fn at_prefix(pos: &Option<Pos>) -> String {
    pos.map(|p| format!("{p}: ")).unwrap_or_default()
}

impl VitError {
    /// Attaches the position of the offending term.
    pub(crate) fn at(self, at: Pos) -> VitError {
        match self {
            VitError::NotVit { found, .. } => VitError::NotVit { found, pos: Some(at) },
            VitError::SlotArity { found, .. } => VitError::SlotArity { found, pos: Some(at) },
            VitError::SlotShape { slot, message, .. } => VitError::SlotShape {
                slot,
                message,
                pos: Some(at),
            },
            other => other,
        }
    }
}

fn shape(slot: usize, message: impl Into<String>) -> VitError {
    VitError::SlotShape {
        slot,
        message: message.into(),
        pos: None,
    }
}

fn pred_list(slot: usize, term: &Term) -> Result<Vec<Pred>, VitError> {
    let items = term
        .as_list()
        .ok_or_else(|| shape(slot, format!("expected a list, found {term}")))?;
    items
        .iter()
        .map(|item| match item {
            Term::Compound(functor, args) => Ok(Pred {
                functor: functor.clone(),
                args: args.clone(),
            }),
            other => Err(shape(slot, format!("expected a predicate, found {other}"))),
        })
        .collect()
}

impl Vit {
    pub fn from_term(term: &Term) -> Result<Vit, VitError> {
        let args = match term {
            Term::Compound(f, args) if f.text() == "vit" => args,
            other => {
                return Err(VitError::NotVit {
                    found: other.to_string(),
                    pos: None,
                })
            }
        };
        if args.len() != 10 {
            return Err(VitError::SlotArity {
                found: args.len(),
                pos: None,
            });
        }
        let segment = match &args[0] {
            Term::Compound(f, parts)
                if f.text() == "segment_description" && parts.len() == 3 && parts.iter().all(|p| p.as_atom().is_some()) =>
            {
                let atom = |i: usize| parts[i].as_atom().unwrap().clone();
                SegmentDescription {
                    utterance_id: atom(0),
                    mode_flag: atom(1),
                    surface_string: atom(2),
                }
            }
            other => return Err(shape(1, format!("expected segment_description/3 of atoms, found {other}"))),
        };
        let semantics = pred_list(2, &args[1])?;
        if let Some(bad) = semantics.iter().find(|p| p.label().is_none()) {
            return Err(shape(2, format!("{bad} does not start with a label")));
        }
        let main_label = args[2]
            .as_atom()
            .cloned()
            .ok_or_else(|| shape(3, format!("expected a label, found {}", args[2])))?;
        Ok(Vit {
            segment,
            semantics,
            main_label,
            sorts: pred_list(4, &args[3])?,
            discourse: pred_list(5, &args[4])?,
            syntax: pred_list(6, &args[5])?,
            tense_aspect: pred_list(7, &args[6])?,
            scope: pred_list(8, &args[7])?,
            prosody: pred_list(9, &args[8])?,
            groups: pred_list(10, &args[9])?,
        })
    }

    pub fn to_term(&self) -> Term {
        let list = |preds: &[Pred]| Term::List(preds.iter().map(Pred::to_term).collect());
        Term::Compound(
            Atom::new("vit"),
            vec![
                Term::Compound(
                    Atom::new("segment_description"),
                    vec![
                        Term::Atom(self.segment.utterance_id.clone()),
                        Term::Atom(self.segment.mode_flag.clone()),
                        Term::Atom(self.segment.surface_string.clone()),
                    ],
                ),
                list(&self.semantics),
                Term::Atom(self.main_label.clone()),
                list(&self.sorts),
                list(&self.discourse),
                list(&self.syntax),
                list(&self.tense_aspect),
                list(&self.scope),
                list(&self.prosody),
                list(&self.groups),
            ],
        )
    }
}

/// Canonical layout: one slot per block, list entries one per line.
pub fn print_vit(vit: &Vit) -> String {
    let mut out = String::new();
    let seg = &vit.segment;
    let segment = Term::Compound(
        Atom::new("segment_description"),
        vec![
            Term::Atom(seg.utterance_id.clone()),
            Term::Atom(seg.mode_flag.clone()),
            Term::Atom(seg.surface_string.clone()),
        ],
    );
    write!(out, "vit({segment},\n    ").unwrap();
    let lists: [&[Pred]; 9] = [
        &vit.semantics,
        &[],
        &vit.sorts,
        &vit.discourse,
        &vit.syntax,
        &vit.tense_aspect,
        &vit.scope,
        &vit.prosody,
        &vit.groups,
    ];
    for (i, preds) in lists.iter().enumerate() {
        if i == 1 {
            write!(out, "{}", Term::Atom(vit.main_label.clone())).unwrap();
        } else {
            out.push('[');
            for (j, p) in preds.iter().enumerate() {
                if j > 0 {
                    out.push_str(",\n     ");
                }
                write!(out, "{p}").unwrap();
            }
            out.push(']');
        }
        out.push_str(if i + 1 == lists.len() { ")\n" } else { ",\n    " });
    }
    out
}

impl fmt::Display for Vit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&print_vit(self))
    }
}
