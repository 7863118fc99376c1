//! Tokenizer shared by the declarative source formats (lexicon, catalog,
//! sort aliases, trafo rules). The interface-term syntax has its own lexer
//! in `vit::parse` because it follows Prolog conventions instead.

use std::fmt;

use thiserror::Error;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Pos {
    pub line: usize,
    pub col: usize,
}

impl fmt::Display for Pos {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.line, self.col)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("syntax error at {pos}: {message}")]
pub struct SyntaxError {
    pub pos: Pos,
    pub message: String,
}

impl SyntaxError {
    pub(crate) fn new(pos: Pos, message: impl Into<String>) -> SyntaxError {
        SyntaxError {
            pos,
            message: message.into(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) enum Punct {
    /// `:<`
    ClassOpen,
    /// `>:`
    ClassClose,
    /// `:<<`
    BaseOpen,
    /// `>>:`
    BaseClose,
    Colon,
    Amp,
    Dot,
    Comma,
    LParen,
    RParen,
    /// `\/`, or a lone `\` as the operator is often typeset.
    Or,
    /// `~`
    Not,
}

impl Punct {
    fn spelling(self) -> &'static str {
        match self {
            Punct::ClassOpen => ":<",
            Punct::ClassClose => ">:",
            Punct::BaseOpen => ":<<",
            Punct::BaseClose => ">>:",
            Punct::Colon => ":",
            Punct::Amp => "&",
            Punct::Dot => ".",
            Punct::Comma => ",",
            Punct::LParen => "(",
            Punct::RParen => ")",
            Punct::Or => "\\/",
            Punct::Not => "~",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) enum Tok {
    Word(String),
    Quoted(String),
    Str(String),
    Punct(Punct),
    Eof,
}

impl fmt::Display for Tok {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Tok::Word(w) => write!(f, "`{w}`"),
            Tok::Quoted(q) => write!(f, "'{q}'"),
            Tok::Str(_) => f.write_str("string literal"),
            Tok::Punct(p) => write!(f, "`{}`", p.spelling()),
            Tok::Eof => f.write_str("end of input"),
        }
    }
}

pub(crate) fn tokenize(src: &str) -> Result<Vec<(Tok, Pos)>, SyntaxError> {
    let chars: Vec<char> = src.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    let mut line = 1;
    let mut col = 1;

    // Advances over `n` chars, tracking line/column.
    let bump = |i: &mut usize, line: &mut usize, col: &mut usize, n: usize| {
        for _ in 0..n {
            if chars[*i] == '\n' {
                *line += 1;
                *col = 1;
            } else {
                *col += 1;
            }
            *i += 1;
        }
    };

    while i < chars.len() {
        let c = chars[i];
        let pos = Pos { line, col };
        if c.is_whitespace() {
            bump(&mut i, &mut line, &mut col, 1);
            continue;
        }
        if c == '%' {
            while i < chars.len() && chars[i] != '\n' {
                bump(&mut i, &mut line, &mut col, 1);
            }
            continue;
        }
        let rest = &chars[i..];
        let starts = |s: &str| s.chars().zip(rest.iter()).all(|(a, &b)| a == b) && rest.len() >= s.len();

        if c.is_ascii_lowercase() {
            let mut j = i;
            while j < chars.len() && (chars[j].is_ascii_alphanumeric() || chars[j] == '_') {
                j += 1;
            }
            out.push((Tok::Word(chars[i..j].iter().collect()), pos));
            let n = j - i;
            bump(&mut i, &mut line, &mut col, n);
            continue;
        }
        if c == '\'' || c == '"' {
            bump(&mut i, &mut line, &mut col, 1);
            let mut text = String::new();
            loop {
                if i >= chars.len() {
                    return Err(SyntaxError::new(pos, "unterminated quoted text"));
                }
                let d = chars[i];
                if d == c {
                    bump(&mut i, &mut line, &mut col, 1);
                    break;
                }
                if d == '\\' {
                    let esc_pos = Pos { line, col };
                    match chars.get(i + 1) {
                        Some(&e) if e == '\\' || e == '\'' || e == '"' => {
                            text.push(e);
                            bump(&mut i, &mut line, &mut col, 2);
                        }
                        _ => return Err(SyntaxError::new(esc_pos, "unknown escape sequence")),
                    }
                    continue;
                }
                text.push(d);
                bump(&mut i, &mut line, &mut col, 1);
            }
            if c == '\'' {
                if text.is_empty() {
                    return Err(SyntaxError::new(pos, "empty quoted atom"));
                }
                out.push((Tok::Quoted(text), pos));
            } else {
                out.push((Tok::Str(text), pos));
            }
            continue;
        }
        if c == '\\' {
            // `\` optionally followed by whitespace and `/`
            let mut j = i + 1;
            while j < chars.len() && chars[j].is_whitespace() {
                j += 1;
            }
            let n = if j < chars.len() && chars[j] == '/' { j + 1 - i } else { 1 };
            out.push((Tok::Punct(Punct::Or), pos));
            bump(&mut i, &mut line, &mut col, n);
            continue;
        }
        let punct = [
            (":<<", Punct::BaseOpen),
            (">>:", Punct::BaseClose),
            (":<", Punct::ClassOpen),
            (">:", Punct::ClassClose),
            (":", Punct::Colon),
            ("&", Punct::Amp),
            (".", Punct::Dot),
            (",", Punct::Comma),
            ("(", Punct::LParen),
            (")", Punct::RParen),
            ("~", Punct::Not),
        ]
        .into_iter()
        .find(|(s, _)| starts(s));
        match punct {
            Some((s, p)) => {
                out.push((Tok::Punct(p), pos));
                bump(&mut i, &mut line, &mut col, s.chars().count());
            }
            None => return Err(SyntaxError::new(pos, format!("unexpected character {c:?}"))),
        }
    }
    out.push((Tok::Eof, Pos { line, col }));
    Ok(out)
}

/// Token cursor with the usual peek/expect helpers.
pub(crate) struct Cursor {
    toks: Vec<(Tok, Pos)>,
    at: usize,
}

impl Cursor {
    pub(crate) fn new(src: &str) -> Result<Cursor, SyntaxError> {
        Ok(Cursor {
            toks: tokenize(src)?,
            at: 0,
        })
    }

    pub(crate) fn peek(&self) -> &Tok {
        &self.toks[self.at].0
    }

    pub(crate) fn pos(&self) -> Pos {
        self.toks[self.at].1
    }

    pub(crate) fn next(&mut self) -> (Tok, Pos) {
        let t = self.toks[self.at].clone();
        if self.at + 1 < self.toks.len() {
            self.at += 1;
        }
        t
    }

    pub(crate) fn at_eof(&self) -> bool {
        matches!(self.peek(), Tok::Eof)
    }

    pub(crate) fn eat(&mut self, p: Punct) -> bool {
        if *self.peek() == Tok::Punct(p) {
            self.next();
            true
        } else {
            false
        }
    }

    pub(crate) fn eat_word(&mut self, w: &str) -> bool {
        if matches!(self.peek(), Tok::Word(x) if x == w) {
            self.next();
            true
        } else {
            false
        }
    }

    pub(crate) fn expect(&mut self, p: Punct) -> Result<Pos, SyntaxError> {
        let pos = self.pos();
        if self.eat(p) {
            Ok(pos)
        } else {
            Err(self.unexpected(&format!("`{}`", p.spelling())))
        }
    }

    pub(crate) fn expect_word(&mut self, w: &str) -> Result<(), SyntaxError> {
        if self.eat_word(w) {
            Ok(())
        } else {
            Err(self.unexpected(&format!("`{w}`")))
        }
    }

    /// An atom in either spelling; `top` is rejected since it is a keyword.
    pub(crate) fn atom(&mut self, what: &str) -> Result<(crate::Atom, Pos), SyntaxError> {
        let pos = self.pos();
        match self.peek().clone() {
            Tok::Word(w) if w != "top" => {
                self.next();
                Ok((crate::Atom::new(w), pos))
            }
            Tok::Quoted(q) => {
                self.next();
                Ok((crate::Atom::quoted(q), pos))
            }
            _ => Err(self.unexpected(what)),
        }
    }

    pub(crate) fn unexpected(&self, wanted: &str) -> SyntaxError {
        SyntaxError::new(self.pos(), format!("expected {wanted}, found {}", self.peek()))
    }
}
