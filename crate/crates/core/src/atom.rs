//! Atoms: the symbolic constants shared by every source format in the crate.

use std::borrow::Borrow;
use std::cmp::Ordering;
use std::fmt;
use std::hash::{Hash, Hasher};

/// A symbolic constant.
///
/// Identity is the text alone. The `quoted` flag only records how the atom
/// was written so printers can reproduce the source spelling; `'termin'`
/// and `termin` compare equal.
#[derive(Clone)]
pub struct Atom {
    text: String,
    quoted: bool,
}

impl Atom {
    /// Builds an atom, quoting it only when the text is not a bare word.
    pub fn new(text: impl Into<String>) -> Atom {
        let text = text.into();
        let quoted = !is_bare_word(&text);
        Atom { text, quoted }
    }

    /// Builds an atom that prints with single quotes.
    pub fn quoted(text: impl Into<String>) -> Atom {
        Atom {
            text: text.into(),
            quoted: true,
        }
    }

    pub fn text(&self) -> &str {
        &self.text
    }

    pub fn is_quoted(&self) -> bool {
        self.quoted
    }

    /// The source spelling: quoted if it was written quoted or has to be.
    pub fn to_source(&self) -> String {
        if self.quoted || !is_bare_word(&self.text) {
            quote(&self.text)
        } else {
            self.text.clone()
        }
    }
}

/// `[a-z][A-Za-z0-9_]*`, excluding the reserved word `top`.
pub fn is_bare_word(text: &str) -> bool {
    is_ident(text) && text != "top"
}

pub(crate) fn is_ident(text: &str) -> bool {
    let mut chars = text.chars();
    match chars.next() {
        Some(c) if c.is_ascii_lowercase() => {}
        _ => return false,
    }
    chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

/// Orders identifiers like `h2` before `h10`: alphabetic prefix first, then
/// the numeric suffix by value, then the full text.
pub fn natural_cmp(a: &str, b: &str) -> Ordering {
    fn split(s: &str) -> (&str, &str) {
        let cut = s.trim_end_matches(|c: char| c.is_ascii_digit()).len();
        s.split_at(cut)
    }
    let (pa, na) = split(a);
    let (pb, nb) = split(b);
    let na_trim = na.trim_start_matches('0');
    let nb_trim = nb.trim_start_matches('0');
    pa.cmp(pb)
        .then(na.is_empty().cmp(&nb.is_empty()).reverse())
        .then(na_trim.len().cmp(&nb_trim.len()))
        .then(na_trim.cmp(nb_trim))
        .then(a.cmp(b))
}

pub(crate) fn quote(text: &str) -> String {
    let mut out = String::with_capacity(text.len() + 2);
    out.push('\'');
    for c in text.chars() {
        if c == '\'' || c == '\\' {
            out.push('\\');
        }
        out.push(c);
    }
    out.push('\'');
    out
}

impl PartialEq for Atom {
    fn eq(&self, other: &Atom) -> bool {
        self.text == other.text
    }
}

impl Eq for Atom {}

impl Hash for Atom {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.text.hash(state)
    }
}

impl PartialOrd for Atom {
    fn partial_cmp(&self, other: &Atom) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Atom {
    fn cmp(&self, other: &Atom) -> Ordering {
        self.text.cmp(&other.text)
    }
}

impl Borrow<str> for Atom {
    fn borrow(&self) -> &str {
        &self.text
    }
}

impl fmt::Debug for Atom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_source())
    }
}

/// Displays the unquoted text, which is what output templates want.
impl fmt::Display for Atom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.text)
    }
}

impl From<&str> for Atom {
    fn from(text: &str) -> Atom {
        Atom::new(text)
    }
}
